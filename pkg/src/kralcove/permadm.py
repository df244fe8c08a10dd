"""
mu-permissible and mu-admissible sets for GL_n and GSp_2g, Iwahori and
parahoric, together with the constructive extension step that proves
Perm_I -> Perm_J is onto.

Sets of faces are returned as sorted tuples so every caller sees the same
canonical order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Optional, Sequence

from .faces import (Face, FaceType, act_on_face, element_from_alcove,
                    face_from_element, face_to_json, half_indices, is_G_face,
                    omega, project, theta, validate_face, eta_vertices)
from .order import GL, GSP, in_polytope, in_polytope_sp, sp_orbit
from .weyl import (AffineElement, compose, identity, reduced_word, right_mult,
                   tau, translation_element, omega_component)

__all__ = [
    "dual_partition", "split_multiplicities", "lattice_points", "sp_mu_scale",
    "translations", "adm_elements", "perm_set", "adm_set",
    "sp_perm_intersection", "extend_permissible", "explain_extension",
    "fill_to_alcove", "perm_surjectivity_check", "check_perm_eq_adm",
    "check_sp_triple", "EqualityReport", "SurjectivityReport",
    "TripleReport",
]


# -- multiplicities -----------------------------------------------------------

def dual_partition(r: Sequence[int], d: int) -> tuple[int, ...]:
    """``mu_j = #{phi : r_phi >= j}`` for ``j = 1..d``.

    >>> dual_partition((1, 1, 0, 0, 0, 0), 3)
    (2, 0, 0)
    """
    if any(a < 0 or a > d for a in r):
        raise ValueError(f"multiplicities must lie in [0, {d}]: {tuple(r)}")
    if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
        raise ValueError(f"multiplicities must be weakly decreasing: {tuple(r)}")
    return tuple(sum(1 for a in r if a >= j) for j in range(1, d + 1))


def split_multiplicities(r: Sequence[int], nu: Sequence[int]) -> list[list[int]]:
    """The 0/1 matrix ``r[alpha][phi] = [phi < nu_alpha]`` (rows alpha, 0-based columns phi).

    Its column sums are ``r`` and its row sums are ``nu``; for descending
    ``r`` it is the only such 0/1 matrix.
    """
    d = len(nu)
    if sorted(nu, reverse=True) != list(dual_partition(r, d)):
        raise ValueError(f"nu={tuple(nu)} is not a permutation of the dual partition of r={tuple(r)}")
    return [[1 if phi < nu_a else 0 for phi in range(len(r))] for nu_a in nu]


# -- polytope lattice points and translations ---------------------------------

@lru_cache(maxsize=None)
def lattice_points(mu: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Integer points of P_mu (GL), sorted."""
    lo, hi = min(mu), max(mu)
    return tuple(p for p in itertools.product(range(lo, hi + 1), repeat=len(mu))
                 if in_polytope(p, mu))


def sp_mu_scale(mu: Sequence[int]) -> int:
    """``d`` when ``mu = (d^g, 0^g)``; raises for any other shape."""
    n = len(mu)
    g = n // 2
    if n == 0 or n % 2 or len(set(mu[:g])) != 1 or any(a != 0 for a in mu[g:]) or mu[0] < 0:
        raise ValueError(f"GSp needs mu = (d^g, 0^g) with d >= 0, got {tuple(mu)}")
    return int(mu[0])


def translations(mu: Sequence[int], group: str = GL) -> list[AffineElement]:
    """``t_(w mu)`` for ``w`` in the finite Weyl group (distinct, sorted)."""
    mu = tuple(mu)
    if group == GL:
        pts = set(itertools.permutations(mu))
    else:
        sp_mu_scale(mu)
        pts = set(sp_orbit(mu))
    return [translation_element(p) for p in sorted(pts)]


def _check_args(mu: Sequence[int], ftype: FaceType, group: str) -> tuple[int, ...]:
    mu = tuple(int(a) for a in mu)
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError(f"mu must be dominant (weakly decreasing): {mu}")
    if len(mu) != ftype.n:
        raise ValueError(f"mu has length {len(mu)} but the face type has rank {ftype.n}")
    if group == GSP:
        sp_mu_scale(mu)
        if not ftype.symmetric:
            raise ValueError(f"GSp needs a symmetric index set, got {ftype.indices}")
    elif group != GL:
        raise ValueError(f"unknown group {group!r}")
    return mu


# -- admissible sets ----------------------------------------------------------

def _subword_closure(x: AffineElement) -> set[AffineElement]:
    n = x.n
    word = reduced_word(x)
    prefix = {identity(n)}
    for i in word:
        prefix |= {right_mult(y, i) for y in prefix}
    t = tau(n, omega_component(x))
    return {compose(y, t) for y in prefix}


def _is_g_alcove(x: AffineElement) -> bool:
    return is_G_face(face_from_element(x, FaceType.iwahori(x.n))) is not None


@lru_cache(maxsize=None)
def adm_elements(mu: tuple[int, ...], group: str = GL) -> frozenset[AffineElement]:
    """Iwahori admissible set as group elements.

    Union of the Bruhat intervals below the ``t_(w mu)``, each obtained as the
    subword closure of one reduced word.  For GSp the GL intervals are cut
    down to the symplectic subgroup, whose Bruhat order is the restricted one.
    """
    out: set[AffineElement] = set()
    for t in translations(mu, group):
        out |= _subword_closure(t)
    if group == GSP:
        out = {x for x in out if _is_g_alcove(x)}
    return frozenset(out)


def adm_set(mu: Sequence[int], ftype: FaceType, group: str = GL) -> tuple[Face, ...]:
    mu = _check_args(mu, ftype, group)
    return _adm_set(mu, ftype, group)


@lru_cache(maxsize=None)
def _adm_set(mu, ftype, group):
    return tuple(sorted({face_from_element(x, ftype) for x in adm_elements(mu, group)}))


# -- permissible sets ---------------------------------------------------------

def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _plus(v, c):
    return tuple(a + c for a in v)


def perm_set(mu: Sequence[int], ftype: FaceType, group: str = GL) -> tuple[Face, ...]:
    """Permissible faces of the given type.

    GL: faces with ``v_i - omega_i`` in P_mu at every index.  GSp: G-faces
    whose points ``x(eta_i)`` move by a vector of the symplectic polytope.
    """
    mu = _check_args(mu, ftype, group)
    if group == GL:
        return _perm_gl(mu, ftype)
    return _perm_gsp(mu, ftype)


@lru_cache(maxsize=None)
def _perm_gl(mu, ftype):
    n = ftype.n
    pts = lattice_points(mu)
    cands = [[tuple(a + b for a, b in zip(p, omega(n, i))) for p in pts] for i in ftype.indices]
    out = []
    chosen: list[tuple[int, ...]] = []

    # v_(i0) <= v_(i1) <= ... <= v_(i_last) <= v_(i0) + 1; sums are fixed by P_mu
    def dfs(k):
        if k == len(cands):
            if _leq(chosen[-1], _plus(chosen[0], 1)):
                out.append(Face(ftype, tuple(chosen)))
            return
        for v in cands[k]:
            if k and not (_leq(chosen[-1], v) and _leq(v, _plus(chosen[0], 1))):
                continue
            chosen.append(v)
            dfs(k + 1)
            chosen.pop()

    dfs(0)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _sp_moves(mu):
    """Half-integral points of the symplectic polytope of ``mu``."""
    lo, hi = 2 * min(mu), 2 * max(mu)
    target = 2 * sum(mu)
    out = []
    for p2 in itertools.product(range(lo, hi + 1), repeat=len(mu)):
        if sum(p2) != target:
            continue
        p = tuple(Fraction(a, 2) for a in p2)
        if in_polytope(p, mu) and in_polytope_sp(p, mu):
            out.append(p)
    return tuple(out)


def _assemble(ftype: FaceType, pairs: dict[int, tuple[int, ...]]) -> Optional[Face]:
    """Build a face from vectors keyed by arbitrary integers; None on clashes."""
    n = ftype.n
    reps: dict[int, tuple[int, ...]] = {}
    for i, v in pairs.items():
        q, r = divmod(i, n)
        v = _plus(v, -q)
        if reps.setdefault(r, v) != v:
            return None
    if set(reps) != set(ftype.indices):
        return None
    return Face(ftype, tuple(reps[i] for i in ftype.indices))


@lru_cache(maxsize=None)
def _perm_gsp(mu, ftype):
    n = ftype.n
    g = n // 2
    eta = eta_vertices(g, ftype)
    half = half_indices(ftype)
    moves = _sp_moves(mu)
    # x(eta_i) = (v_i + v_(2g-i)) / 2 with v_i <= v_(2g-i) <= v_i + 1, so the
    # point x(eta_i) determines v_i = floor and v_(2g-i) = ceil
    cands = []
    for i in half:
        lst = []
        for p in moves:
            q = [a + b for a, b in zip(eta[i], p)]
            lo = tuple(floor(a) for a in q)
            hi = tuple(int(2 * a) - b for a, b in zip(q, lo))
            if 2 * i == n and lo != hi:
                # v_g is its own mirror, so x(eta_g) must be a lattice point
                continue
            lst.append((lo, hi))
        cands.append(lst)
    out = []
    chosen: list[tuple] = []

    def dfs(k):
        if k == len(half):
            pairs = {}
            for i, (lo, hi) in zip(half, chosen):
                pairs[i] = lo
                pairs[n - i] = hi
            f = _assemble(ftype, pairs)
            if f is not None and validate_face(f) and is_G_face(f) is not None:
                out.append(f)
            return
        for lo, hi in cands[k]:
            if k and not _leq(chosen[-1][0], lo):
                continue
            chosen.append((lo, hi))
            dfs(k + 1)
            chosen.pop()

    dfs(0)
    return tuple(sorted(out))


def sp_perm_intersection(mu: Sequence[int], ftype: FaceType) -> tuple[Face, ...]:
    """GL-permissible faces of a symmetric type that are also G-faces."""
    mu = _check_args(mu, ftype, GSP)
    return _sp_intersection(mu, ftype)


@lru_cache(maxsize=None)
def _sp_intersection(mu, ftype):
    n = ftype.n
    g = n // 2
    # sum(v_(2g-i)) = sum(v_i) + 2g - 2i = -sum(v_i) + 2g c pins the shift c
    c, rem = divmod(sum(mu) + g, g)
    if rem:
        return ()
    pts = lattice_points(mu)
    half = half_indices(ftype)
    cands = []
    for i in half:
        lst = []
        for p in pts:
            v = tuple(a + b for a, b in zip(p, omega(n, i)))
            m = n - i
            mirror = _plus(theta(v), c)
            if in_polytope([a - b for a, b in zip(mirror, omega(n, m))], mu):
                lst.append((v, mirror))
        cands.append(lst)
    out = []
    chosen: list[tuple] = []

    def dfs(k):
        if k == len(half):
            pairs = {}
            for i, (v, mirror) in zip(half, chosen):
                pairs[i] = v
                pairs[n - i] = mirror
            f = _assemble(ftype, pairs)
            if f is not None and validate_face(f) and is_G_face(f) == c:
                out.append(f)
            return
        for v, mirror in cands[k]:
            if k and not _leq(chosen[-1][0], v):
                continue
            chosen.append((v, mirror))
            dfs(k + 1)
            chosen.pop()

    dfs(0)
    return tuple(sorted(out))


# -- the extension step -------------------------------------------------------

def _check_extension(vk, vl, k, l, mu):
    n = len(mu)
    if len(vk) != n or len(vl) != n:
        raise ValueError("vectors must have the rank of mu")
    if not k < l <= k + n:
        raise ValueError(f"need k < l <= k + n, got k={k}, l={l}, n={n}")
    diff = [b - a for a, b in zip(vk, vl)]
    if any(a not in (0, 1) for a in diff) or sum(diff) != l - k:
        raise ValueError(f"v_l - v_k must be minuscule with sum l - k: {diff}")
    if not in_polytope([a - b for a, b in zip(vk, omega(n, k))], mu):
        raise ValueError("v_k - omega_k is not in P_mu")
    if not in_polytope([a - b for a, b in zip(vl, omega(n, l))], mu):
        raise ValueError("v_l - omega_l is not in P_mu")
    return diff


def explain_extension(vk: Sequence[int], vl: Sequence[int], k: int, l: int,
                      mu: Sequence[int]) -> dict:
    """Run the extension step and report which case fired and the chosen data.

    Positions are 1-based in the returned dict.
    """
    diff = _check_extension(vk, vl, k, l, mu)
    n = len(mu)
    kp = k % n
    u = [a - b for a, b in zip(vk, omega(n, k))]
    info = {"k_prime": kp + 1}
    if diff[kp] == 1:
        m = kp
        info["case"] = 1
    else:
        # sort v_k - omega_k dominant; within a tie block put v_l - v_k = 1
        # first and k' last
        order = sorted(range(n), key=lambda j: (-u[j], j == kp, -diff[j], j))
        m2 = max(M for M in range(n) if diff[order[M]] > 0)
        m1 = min(M for M in range(n) if u[order[M]] == u[order[m2]])
        m = order[m1]
        info.update(case=2, sigma=[j + 1 for j in order], m_tilde_tilde=m2 + 1, m_tilde=m1 + 1)
    w = list(vk)
    w[m] += 1
    info["m"] = m + 1
    info["v_next"] = tuple(w)
    return info


def extend_permissible(vk: Sequence[int], vl: Sequence[int], k: int, l: int,
                       mu: Sequence[int]) -> tuple[int, ...]:
    """One step ``v_k -> v_(k+1) = v_k + e_m`` towards ``v_l`` inside ``omega + P_mu``.

    >>> extend_permissible((1, 1, 0), (1, 2, 1), 0, 2, (1, 1, 0))
    (1, 1, 1)
    """
    return explain_extension(vk, vl, k, l, mu)["v_next"]


def _fill_gl(f: Face, mu) -> dict[int, tuple[int, ...]]:
    n = f.n
    idx = list(f.indices)
    full = f.as_map()
    for a, k in enumerate(idx):
        l = idx[a + 1] if a + 1 < len(idx) else idx[0] + n
        vl = f.vector(l)
        v = f.vector(k)
        for s in range(k, l - 1):
            v = extend_permissible(v, vl, s, l, mu)
            q, r = divmod(s + 1, n)
            full[r] = _plus(v, -q)
    return full


def _fill_gsp(f: Face, mu) -> dict[int, tuple[int, ...]]:
    n = f.n
    c = is_G_face(f)
    if c is None:
        raise ValueError("face is not a G-face")
    full = f.as_map()
    while len(full) < n:
        reps = sorted(full)
        for a, k in enumerate(reps):
            if (k + 1) % n not in full:
                break
        l = reps[a + 1] if a + 1 < len(reps) else reps[0] + n

        def vec(i):
            q, r = divmod(i, n)
            return _plus(full[r], q)

        w = extend_permissible(vec(k), vec(l), k, l, mu)
        new = k + 1
        mirror = n - new
        w_mirror = _plus(theta(w), c)
        q, r = divmod(new, n)
        full[r] = _plus(w, -q)
        q2, r2 = divmod(mirror, n)
        w_mirror = _plus(w_mirror, -q2)
        if full.setdefault(r2, w_mirror) != w_mirror:
            raise ArithmeticError(f"self-mirror index {r2} received an asymmetric vector")
    return full


def fill_to_alcove(f: Face, mu: Sequence[int], group: str = GL) -> Face:
    """Extend a permissible face to a permissible alcove by iterated extension steps.

    Gaps are filled in increasing index order.  For GSp each new vector is
    mirrored through theta so the result stays a G-face.
    """
    mu = tuple(mu)
    full = _fill_gl(f, mu) if group == GL else _fill_gsp(f, mu)
    return Face.from_map(f.n, full)


# -- reports ------------------------------------------------------------------

def _header(group, mu, ftype):
    return {"group": group, "n": ftype.n, "mu": list(mu), "I": list(ftype.indices)}


@dataclass
class EqualityReport:
    group: str
    mu: tuple
    ftype: FaceType
    perm_count: int
    adm_count: int
    only_in_perm: list[Face] = field(default_factory=list)
    only_in_adm: list[Face] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.only_in_perm and not self.only_in_adm

    def to_json(self) -> dict:
        return {**_header(self.group, self.mu, self.ftype), "check": "eq", "equal": self.equal,
                "perm_count": self.perm_count, "adm_count": self.adm_count,
                "only_in_perm": [face_to_json(f) for f in self.only_in_perm],
                "only_in_adm": [face_to_json(f) for f in self.only_in_adm]}


def compare_sets(group, mu, ftype, perm, adm) -> EqualityReport:
    p, a = set(perm), set(adm)
    return EqualityReport(group, tuple(mu), ftype, len(p), len(a),
                          sorted(p - a), sorted(a - p))


def check_perm_eq_adm(mu: Sequence[int], ftype: FaceType, group: str = GL) -> EqualityReport:
    mu = _check_args(mu, ftype, group)
    return compare_sets(group, mu, ftype, perm_set(mu, ftype, group), adm_set(mu, ftype, group))


@dataclass
class TripleReport:
    mu: tuple
    ftype: FaceType
    adm: EqualityReport
    intersection: EqualityReport

    @property
    def equal(self) -> bool:
        return self.adm.equal and self.intersection.equal

    def to_json(self) -> dict:
        return {**_header(GSP, self.mu, self.ftype), "check": "intersect", "equal": self.equal,
                "perm_vs_adm": self.adm.to_json(),
                "perm_vs_intersection": {
                    "equal": self.intersection.equal,
                    "perm_count": self.intersection.perm_count,
                    "intersection_count": self.intersection.adm_count,
                    "only_in_perm": [face_to_json(f) for f in self.intersection.only_in_perm],
                    "only_in_intersection": [face_to_json(f) for f in self.intersection.only_in_adm]}}


def check_sp_triple(mu: Sequence[int], ftype: FaceType) -> TripleReport:
    """Adm_(G,I) = Perm_(G,I) = Perm_I intersected with the symplectic group."""
    mu = _check_args(mu, ftype, GSP)
    perm = perm_set(mu, ftype, GSP)
    return TripleReport(mu, ftype,
                        compare_sets(GSP, mu, ftype, perm, adm_set(mu, ftype, GSP)),
                        compare_sets(GSP, mu, ftype, perm, sp_perm_intersection(mu, ftype)))


@dataclass
class SurjectivityReport:
    group: str
    mu: tuple
    source: FaceType
    target: FaceType
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    examples: list[dict] = field(default_factory=list)

    @property
    def surjective(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {**_header(self.group, self.mu, self.source), "J": list(self.target.indices),
                "check": "surj", "surjective": self.surjective, "checked": self.checked,
                "method": "iterated extension step", "failures": self.failures,
                "examples": self.examples}


def perm_surjectivity_check(mu: Sequence[int], source: FaceType, target: FaceType,
                            group: str = GL, max_examples: int = 3) -> SurjectivityReport:
    """Build a permissible preimage in type ``source`` for every permissible face of ``target``.

    For GSp the sets are the GL-permissible G-faces.  Preimages come from
    :func:`fill_to_alcove`, never from searching the source set.
    """
    mu = _check_args(mu, source, group)
    _check_args(mu, target, group)
    if not target.issubset(source):
        raise ValueError(f"J={target.indices} is not a subset of I={source.indices}")
    if group == GL:
        src, tgt = perm_set(mu, source), perm_set(mu, target)
    else:
        src, tgt = sp_perm_intersection(mu, source), sp_perm_intersection(mu, target)
    src = set(src)
    report = SurjectivityReport(group, mu, source, target)
    for f in tgt:
        report.checked += 1
        try:
            pre = project(fill_to_alcove(f, mu, group), source)
        except (ValueError, ArithmeticError) as exc:
            report.failures.append({"face": face_to_json(f), "error": str(exc)})
            continue
        if pre not in src or project(pre, target) != f:
            report.failures.append({"face": face_to_json(f), "preimage": face_to_json(pre)})
        elif len(report.examples) < max_examples:
            report.examples.append({"face": face_to_json(f), "preimage": face_to_json(pre)})
    return report
