"""
Matrix witnesses lifting special-fibre points of the local model to the
generic fibre, and their exact verification.

Conventions.  Each O_F-line of a lattice is given the basis of decreasing
pi-powers ``b_1, ..., b_e = pi^(e-1), ..., 1``, so multiplication by pi sends
``b_k`` to ``b_(k-1)`` and ``b_1`` to ``p b_e``.  A lattice of rank ``d`` over
O_F is a stack of ``d`` such lines; a subspace is the column span of a
``(d e) x r`` matrix.  In the chain-adapted bases the inclusion
``Lambda_i -> Lambda_(i+1)`` multiplies line ``i`` (0-based) by pi and is the
identity elsewhere; after the last step ``pi^-1 Lambda_0`` is identified with
``Lambda_0`` again, so the steps compose to multiplication by pi.

The Eisenstein polynomial is taken to be ``T^e - p`` and the coefficients of
target characteristic polynomials live in ``Z_(p)[y]/(y^m - p)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .ring import (Matrix, RingElem, ScalarRing, block_diag, char_poly,
                   elem_from_json, identity, independent_rows, is_zero_matrix,
                   mat_mul, matmul_mod_p, poly, poly_product, poly_str,
                   rank_mod_p, solve_mod_p, solve_square, transpose, zeros)

__all__ = [
    "pi_block", "pi_matrix", "transition_matrix", "solve_columns", "solve_A",
    "char_poly", "companion", "construct_M", "cyclotomic", "segment_targets",
    "stratum_matrix", "build_block_lift", "block_lift_witness",
    "symplectic_constant_lift", "m62_witness", "Witness", "CheckResult",
    "WitnessReport", "verify_det_condition", "verify_chain",
    "reduce_mod_max_ideal", "verify_reduction", "jordan_type", "trace_pi_power",
    "gram_matrix", "chain_gram", "verify_isotropy", "verify_witness",
    "witness_to_json", "witness_from_json", "load_witness",
]


# -- the action of pi ---------------------------------------------------------

def pi_block(ring: ScalarRing, e: int) -> Matrix:
    """Multiplication by pi on one O_F-line, columns are images of basis vectors."""
    out = zeros(ring, e, e)
    for k in range(1, e):
        out[k - 1][k] = ring.one
    out[e - 1][0] = out[e - 1][0] + ring(ring.p)
    return out


def pi_matrix(ring: ScalarRing, e: int, d: int, i: int = 0) -> Matrix:
    """Multiplication by pi on ``Lambda_i``; the same matrix for every chain index."""
    if not 0 <= i < max(d, 1):
        raise ValueError(f"chain index {i} out of range for d={d}")
    blk = pi_block(ring, e)
    return block_diag(ring, [(blk, e, e)] * d)


def transition_matrix(ring: ScalarRing, e: int, d: int, i: int) -> Matrix:
    """The inclusion ``Lambda_i -> Lambda_(i+1)``: pi on line ``i``, identity elsewhere."""
    if not 0 <= i < d:
        raise ValueError(f"chain index {i} out of range for d={d}")
    blocks = [(pi_block(ring, e) if a == i else identity(ring, e), e, e) for a in range(d)]
    return block_diag(ring, blocks)


# -- solving ------------------------------------------------------------------

def _cols(m: Matrix, cols: Optional[int]) -> int:
    return len(m[0]) if m and m[0] is not None and len(m[0]) else (cols or 0)


def solve_columns(m: Matrix, rhs: Matrix, ring: ScalarRing, cols: int = 0) -> Optional[Matrix]:
    """``X`` with ``m X = rhs`` for ``m`` of full column rank, or None if no such ``X``.

    Solves on a maximal invertible minor and re-checks the full identity.
    """
    r = _cols(m, cols)
    k = len(rhs[0]) if rhs and rhs[0] else 0
    if r == 0:
        return [] if is_zero_matrix(rhs) else None
    rows = independent_rows(m, ring)
    if len(rows) < r:
        raise ValueError(f"degenerate matrix: rank {len(rows)} < {r} columns")
    x = solve_square([m[i] for i in rows], [rhs[i] for i in rows], ring)
    check = mat_mul(m, x, ring)
    if any(a != b for ra, rb in zip(check, rhs) for a, b in zip(ra, rb)):
        return None
    return x if k else [[] for _ in range(r)]


def solve_A(m: Matrix, pi: Matrix, ring: ScalarRing, cols: int = 0) -> Optional[Matrix]:
    """The matrix ``A`` with ``pi m = m A``; None if the column span is not pi-stable."""
    return solve_columns(m, mat_mul(pi, m, ring), ring, cols)


# -- the standard model M(e, r) -----------------------------------------------

def companion(chi: Sequence[RingElem], ring: ScalarRing) -> Matrix:
    """Companion matrix with ones on the superdiagonal and ``-a_0 .. -a_(r-1)`` in the last row."""
    r = len(chi) - 1
    if r < 0 or chi[-1] != 1:
        raise ValueError("target polynomial must be monic")
    out = zeros(ring, r, r)
    for i in range(r - 1):
        out[i][i + 1] = ring.one
    if r:
        out[r - 1] = [-a for a in chi[:r]]
    return out


def construct_M(ring: ScalarRing, e: int, r: int, chi: Sequence[RingElem]) -> Optional[Matrix]:
    """``M(e, r) = (I_r ; B)`` with ``pi M = M C`` for ``C`` the companion of ``chi``.

    The top identity block forces row ``k`` of ``M`` to be ``e_1 C^(k-1)``; the
    system is consistent iff ``e_1 C^e = p e_1``, i.e. ``chi`` divides
    ``T^e - p``.  Returns None when inconsistent or when an entry is not
    p-integral.
    """
    if not 0 <= r <= e:
        raise ValueError(f"need 0 <= r <= e, got r={r}, e={e}")
    chi = poly(ring, chi)
    if len(chi) - 1 != r:
        raise ValueError(f"target has degree {len(chi) - 1}, expected {r}")
    if r == 0:
        return [[] for _ in range(e)]
    c = companion(chi, ring)
    row = [ring.one] + [ring.zero] * (r - 1)
    rows = []
    for _ in range(e):
        rows.append(row)
        row = mat_mul([row], c, ring)[0]
    if row != [x * ring.p for x in rows[0]]:
        return None
    if not all(x.is_integral() for rw in rows for x in rw):
        return None
    return rows


def cyclotomic(k: int) -> list[int]:
    """Integer coefficients of the k-th cyclotomic polynomial, lowest degree first."""
    return list(_cyclotomic(k))


@lru_cache(maxsize=None)
def _cyclotomic(k: int) -> tuple[int, ...]:
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            den = _cyclotomic(d)
            # exact division by a monic integer polynomial
            quot = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for i in range(len(quot) - 1, -1, -1):
                q = rem[i + len(den) - 1]
                quot[i] = q
                for j, b in enumerate(den):
                    rem[i + j] -= q * b
            num = quot
    return tuple(num)


def segment_targets(ring: ScalarRing, e: int) -> dict[int, list[RingElem]]:
    """Products of ``T - phi(pi)`` over initial segments of the embeddings.

    Embeddings are ordered by the order ``k`` of the root of unity
    ``phi(pi)/pi`` (``k`` runs over divisors of ``e``); only segment lengths at
    a block boundary give polynomials with coefficients in ``Q(pi)``, and
    those are returned, keyed by length.  Requires ``y = pi``, i.e. ``m = e``.
    """
    if ring.m != e:
        raise ValueError("segment targets are expressed with y = pi, so m must equal e")
    out = {0: poly(ring, [1])}
    acc = poly(ring, [1])
    s = 0
    for k in range(1, e + 1):
        if e % k:
            continue
        phi = _cyclotomic(k)
        deg = len(phi) - 1
        # pi^deg * Phi_k(T / pi)
        factor = poly(ring, [ring.power_of_y(deg - j) * a for j, a in enumerate(phi)])
        acc = poly_product(ring, [acc, factor])
        s += deg
        out[s] = acc
    return out


def stratum_matrix(e: int, nu: Sequence[int]) -> list[list[int]]:
    """The special-fibre point: block diagonal with blocks ``(I_(nu_a) ; 0)``, entries mod p."""
    d = len(nu)
    r = sum(nu)
    out = [[0] * r for _ in range(d * e)]
    c0 = 0
    for a, s in enumerate(nu):
        for j in range(s):
            out[a * e + j][c0 + j] = 1
        c0 += s
    return out


# -- witnesses ----------------------------------------------------------------

@dataclass
class Witness:
    ring: ScalarRing
    d: int
    r: int
    matrices: list[Matrix]
    chi: list[RingElem]
    group: str = "gl"
    nu: Optional[list[int]] = None
    block_targets: Optional[list[list[RingElem]]] = None
    stratum: Optional[list[list[list[int]]]] = None

    @property
    def e(self) -> int:
        return self.ring.e

    @property
    def g(self) -> Optional[int]:
        return self.d // 2 if self.group == "gsp" else None


def build_block_lift(ring: ScalarRing, nu: Sequence[int], blocks: Sequence[Matrix],
                     targets: Optional[Sequence[Sequence[RingElem]]] = None,
                     group: str = "gl") -> Witness:
    """Block-diagonal assembly, the same matrix at every chain index.

    Block ``a`` must be ``e x nu_a``.  Without explicit per-block targets the
    characteristic polynomials of the blocks are used.
    """
    e = ring.e
    if len(blocks) != len(nu):
        raise ValueError("one block per entry of nu")
    for a, (blk, s) in enumerate(zip(blocks, nu)):
        if len(blk) != e or any(len(row) != s for row in blk):
            raise ValueError(f"block {a} must be {e} x {s}")
    if targets is None:
        targets = []
        for blk, s in zip(blocks, nu):
            a = solve_A(blk, pi_block(ring, e), ring, s)
            if a is None:
                raise ValueError("block span is not pi-stable")
            targets.append(char_poly(a, ring))
    targets = [poly(ring, t) for t in targets]
    mat = block_diag(ring, [(blk, e, s) for blk, s in zip(blocks, nu)])
    d = len(nu)
    return Witness(ring, d, sum(nu), [mat] * d, poly_product(ring, targets), group,
                   list(nu), targets, [stratum_matrix(e, nu)] * d)


def block_lift_witness(ring: ScalarRing, r: Sequence[int], nu: Sequence[int]) -> Optional[Witness]:
    """The linear lift for the stratum ``nu`` of the local model with multiplicities ``r``.

    ``chi`` is built from ``r`` alone, as the product over the dual partition
    ``mu`` of the segment targets, so agreement with the block product is a
    real check.  None when a needed target is not representable.
    """
    from .permadm import dual_partition

    e = ring.e
    d = len(nu)
    if len(r) != e:
        raise ValueError(f"need one multiplicity per embedding ({e}), got {len(r)}")
    mu = dual_partition(r, d)
    if sorted(nu, reverse=True) != list(mu):
        raise ValueError(f"nu={tuple(nu)} is not a permutation of mu={mu}")
    seg = segment_targets(ring, e)
    if any(s not in seg for s in mu):
        return None
    blocks = [construct_M(ring, e, s, seg[s]) for s in nu]
    if any(b is None for b in blocks):
        return None
    w = build_block_lift(ring, nu, blocks, [seg[s] for s in nu])
    w.chi = poly_product(ring, [seg[s] for s in mu])
    return w


def symplectic_constant_lift(ring: ScalarRing, g: int, nu: Sequence[int]) -> Witness:
    """The 0/1 lift for ``nu`` with entries in ``{0, e}``: blocks ``I_e`` or empty."""
    e = ring.e
    if len(nu) != 2 * g or any(s not in (0, e) for s in nu):
        raise ValueError(f"nu must have 2g={2 * g} entries in {{0, {e}}}")
    blocks = [identity(ring, e) if s else [[] for _ in range(e)] for s in nu]
    full = poly(ring, [-ring.p] + [0] * (e - 1) + [1])
    targets = [full if s else poly(ring, [1]) for s in nu]
    return build_block_lift(ring, nu, blocks, targets, group="gsp")


def m62_witness(p: int = 7) -> Witness:
    """``M(6, 2)`` with target ``T^2 - y`` where ``y`` plays pi^2, ``y^3 = p``."""
    ring = ScalarRing(p, 3, 6)
    chi = poly(ring, [-ring.y, 0, 1])
    m = construct_M(ring, 6, 2, chi)
    return build_block_lift(ring, [2], [m], [chi])


# -- reports ------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool = True
    details: list[dict] = field(default_factory=list)

    def fail(self, **info) -> None:
        self.passed = False
        self.details.append(info)

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "details": self.details}


@dataclass
class WitnessReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _sub(m: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return [row[c0:c1] for row in m[r0:r1]]


def verify_det_condition(w: Witness) -> CheckResult:
    """``det(T - pi|F_i) = chi`` at every chain index, plus the per-block factorisation."""
    ring, e = w.ring, w.e
    res = CheckResult("det_condition")
    pi = pi_matrix(ring, e, w.d)
    for i, m in enumerate(w.matrices):
        a = solve_A(m, pi, ring, w.r)
        if a is None:
            res.fail(index=i, error="column span is not pi-stable")
            continue
        cp = char_poly(a, ring)
        if cp != poly(ring, w.chi):
            res.fail(index=i, error="characteristic polynomial mismatch",
                     got=poly_str(cp), expected=poly_str(w.chi))
    if w.nu is not None and w.block_targets is not None:
        if poly_product(ring, w.block_targets) != poly(ring, w.chi):
            res.fail(error="block targets do not multiply to chi")
        m = w.matrices[0]
        c0 = 0
        for a, (s, target) in enumerate(zip(w.nu, w.block_targets)):
            blk = _sub(m, a * e, (a + 1) * e, c0, c0 + s)
            c0 += s
            ab = solve_A(blk, pi_block(ring, e), ring, s)
            if ab is None:
                res.fail(block=a, error="block span is not pi-stable")
            elif char_poly(ab, ring) != poly(ring, target):
                res.fail(block=a, error="block characteristic polynomial mismatch",
                         got=poly_str(char_poly(ab, ring)), expected=poly_str(target))
    return res


def verify_chain(w: Witness) -> CheckResult:
    """Each inclusion ``Lambda_i -> Lambda_(i+1)`` carries ``F_i`` into ``F_(i+1)``."""
    ring, e, d = w.ring, w.e, w.d
    res = CheckResult("chain")
    for i in range(d):
        t = transition_matrix(ring, e, d, i)
        img = mat_mul(t, w.matrices[i], ring)
        nxt = w.matrices[(i + 1) % d]
        if solve_columns(nxt, img, ring, w.r) is None:
            bad = next(j for j in range(w.r)
                       if solve_columns(nxt, [[row[j]] for row in img], ring, w.r) is None)
            res.fail(index=i, error=f"image of F_{i} leaves F_{(i + 1) % d}", column=bad,
                     image=[x.to_json() for x in (row[bad] for row in img)])
    total = identity(ring, d * e)
    for i in range(d):
        total = mat_mul(transition_matrix(ring, e, d, i), total, ring)
    if total != pi_matrix(ring, e, d):
        res.fail(error="transitions do not compose to multiplication by pi")
    return res


def reduce_mod_max_ideal(m: Matrix) -> list[list[int]]:
    """Reduce an integral matrix to the residue field F_p."""
    return [[x.reduce() for x in row] for row in m]


def jordan_type(mbar: Sequence[Sequence[int]], pibar: Sequence[Sequence[int]], p: int,
                cols: int = 0) -> list[int]:
    """Jordan block sizes of the nilpotent operator ``pibar`` on the span of ``mbar``."""
    r = len(mbar[0]) if mbar and mbar[0] else cols
    if r == 0:
        return []
    if rank_mod_p(mbar, p) < r:
        raise ValueError("reduced matrix does not have full column rank")
    a = solve_mod_p(mbar, matmul_mod_p(pibar, mbar, p), p)
    if a is None:
        raise ValueError("span is not stable under the reduced operator")
    ranks = [r]
    power = [row[:] for row in a]
    while ranks[-1]:
        ranks.append(rank_mod_p(power, p))
        if ranks[-1] == ranks[-2]:
            raise ValueError("restricted operator is not nilpotent")
        power = matmul_mod_p(power, a, p)
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes += [k] * exact
    return sizes


def verify_reduction(w: Witness) -> CheckResult:
    """Integrality, agreement with the claimed stratum, and the Jordan type of the stratum."""
    ring, e = w.ring, w.e
    res = CheckResult("reduction")
    pibar = reduce_mod_max_ideal(pi_matrix(ring, e, w.d))
    for i, m in enumerate(w.matrices):
        if not all(x.is_integral() for row in m for x in row):
            res.fail(index=i, error="matrix has non-integral entries")
            continue
        mbar = reduce_mod_max_ideal(m)
        if w.stratum is not None and mbar != [row[:] for row in w.stratum[i]]:
            res.fail(index=i, error="reduction differs from the claimed stratum matrix")
            continue
        if w.nu is not None:
            try:
                jt = jordan_type(mbar, pibar, ring.p, w.r)
            except ValueError as exc:
                res.fail(index=i, error=str(exc))
                continue
            expected = sorted((s for s in w.nu if s), reverse=True)
            if jt != expected:
                res.fail(index=i, error="Jordan type mismatch", got=jt, expected=expected)
    return res


# -- the symplectic pairing ---------------------------------------------------

def trace_pi_power(j: int, e: int, p: int) -> Fraction:
    """``Tr_(F/F_0)(pi^j)`` for ``pi^e = p``: ``e p^(j/e)`` if ``e | j``, else 0."""
    q, r = divmod(j, e)
    return Fraction(e) * Fraction(p) ** q if r == 0 else Fraction(0)


def _symplectic_sign(g: int, j: int, k: int) -> int:
    # {e_i, f_j} = delta_(i, g+1-j): line j pairs with line 2g-1-j (0-based)
    if k != 2 * g - 1 - j:
        return 0
    return 1 if j < g else -1


def _tame_delta(e: int, p: int, delta_exponent: Optional[int]) -> int:
    if delta_exponent is None:
        if e % p == 0:
            raise ValueError(f"wild case p={p} | e={e}: supply delta_exponent explicitly")
        return 1 - e
    return delta_exponent


def chain_gram(g: int, e: int, p: int, i: int, delta_exponent: Optional[int] = None) -> Matrix:
    """Gram matrix of the pairing between ``Lambda_i`` and ``Lambda_-i = pi Lambda_(2g-i)``.

    Rows use the adapted basis of ``Lambda_i``, columns that of ``Lambda_(2g-i)``
    (scaled by pi); so ``M_i^T G M_(2g-i) = 0`` says ``F_i`` pairs to zero with
    ``F_(2g-i)``.
    """
    delta = _tame_delta(e, p, delta_exponent)
    ring = ScalarRing(p, 1, e)
    n = 2 * g
    out = zeros(ring, n * e, n * e)
    for j in range(n):
        jm = n - 1 - j
        sign = _symplectic_sign(g, j, jm)
        for k in range(e):
            a = (e - 1 - k) - (1 if j < i else 0)
            for k2 in range(e):
                b = (e - 1 - k2) + (1 if jm >= n - i else 0)
                val = trace_pi_power(a + b + delta, e, p) * sign
                if val:
                    out[j * e + k][jm * e + k2] = ring(val)
    return out


def gram_matrix(g: int, e: int, p: int, delta_exponent: Optional[int] = None) -> Matrix:
    """``<v, w> = Tr(delta {v, w})`` on the pi-power basis of ``Lambda_0``."""
    delta = _tame_delta(e, p, delta_exponent)
    ring = ScalarRing(p, 1, e)
    n = 2 * g
    out = zeros(ring, n * e, n * e)
    for j in range(n):
        jm = n - 1 - j
        sign = _symplectic_sign(g, j, jm)
        for k in range(e):
            for k2 in range(e):
                val = trace_pi_power((e - 1 - k) + (e - 1 - k2) + delta, e, p) * sign
                if val:
                    out[j * e + k][jm * e + k2] = ring(val)
    return out


def verify_isotropy(w: Witness, gram: Optional[Matrix] = None) -> CheckResult:
    """``M_i^T G_i M_(2g-i) = 0`` for every chain index."""
    res = CheckResult("isotropy")
    if w.group != "gsp":
        raise ValueError("isotropy applies to symplectic witnesses")
    g, e, p = w.g, w.e, w.ring.p
    n = 2 * g
    for i in range(n):
        gi = gram if gram is not None else chain_gram(g, e, p, i)
        gi = [[w.ring(x.c[0]) if x.ring != w.ring else x for x in row] for row in gi]
        left = mat_mul(transpose(w.matrices[i], n * e), gi, w.ring)
        pairing = mat_mul(left, w.matrices[(n - i) % n], w.ring)
        for a, row in enumerate(pairing):
            for b, x in enumerate(row):
                if not x.is_zero():
                    res.fail(index=i, row=a, col=b, value=x.to_json())
                    break
            else:
                continue
            break
    return res


def verify_witness(w: Witness) -> WitnessReport:
    checks = [verify_det_condition(w), verify_chain(w), verify_reduction(w)]
    if w.group == "gsp":
        checks.append(verify_isotropy(w))
    return WitnessReport(checks)


# -- serialization ------------------------------------------------------------

def _mat_json(m: Matrix) -> list:
    return [[x.to_json() for x in row] for row in m]


def witness_to_json(w: Witness) -> dict:
    out = {
        "group": w.group,
        "ring": {"e": w.ring.e, "p": w.ring.p, "m": w.ring.m},
        "d": w.d,
        "r": w.r,
        "chi": [c.to_json() for c in w.chi],
        "matrices": [_mat_json(m) for m in w.matrices],
    }
    if w.nu is not None:
        out["nu"] = list(w.nu)
    if w.block_targets is not None:
        out["block_targets"] = [[c.to_json() for c in t] for t in w.block_targets]
    if w.stratum is not None:
        out["stratum"] = w.stratum
    return out


def witness_from_json(obj: dict) -> Witness:
    rp = obj["ring"]
    ring = ScalarRing(int(rp["p"]), int(rp.get("m", 1)), int(rp["e"]))
    e, d, r = ring.e, int(obj["d"]), int(obj["r"])
    group = obj.get("group", "gl")
    if group not in ("gl", "gsp"):
        raise ValueError(f"unknown group {group!r}")
    if group == "gsp" and d % 2:
        raise ValueError("symplectic witnesses need an even chain length")
    mats = []
    for m in obj["matrices"]:
        mat = [[elem_from_json(ring, x) for x in row] for row in m]
        if len(mat) != d * e or any(len(row) != r for row in mat):
            raise ValueError(f"each matrix must be {d * e} x {r}")
        mats.append(mat)
    if len(mats) != d:
        raise ValueError(f"expected {d} matrices, one per chain index")
    chi = poly(ring, [elem_from_json(ring, c) for c in obj["chi"]])
    if len(chi) - 1 != r:
        raise ValueError(f"chi has degree {len(chi) - 1} but there are {r} columns")
    nu = obj.get("nu")
    targets = obj.get("block_targets")
    if targets is not None:
        targets = [poly(ring, [elem_from_json(ring, c) for c in t]) for t in targets]
    if nu is not None and sum(nu) != r:
        raise ValueError("nu must sum to the number of columns")
    return Witness(ring, d, r, mats, chi, group, nu, targets, obj.get("stratum"))


def load_witness(path) -> Witness:
    with open(path) as fh:
        return witness_from_json(json.load(fh))
