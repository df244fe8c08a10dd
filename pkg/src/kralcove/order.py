"""
Orders and polytopes: dominance (majorization), membership in the weight
polytope P_mu for GL_n and its symplectic analogue, and the Bruhat order on
the extended affine Weyl group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .weyl import (AffineElement, has_left_descent, left_mult, length,
                   omega_component, waff_part)

__all__ = [
    "GL", "GSP", "MuPolytope", "is_dominant", "dominance_leq", "in_polytope",
    "in_polytope_sp", "hull_contains", "sp_weyl_group", "sp_orbit",
    "bruhat_leq", "maximal_elements",
]

GL = "GL"
GSP = "GSp"


def is_dominant(v: Sequence) -> bool:
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def _partial_sums_leq(lam: Sequence, mu: Sequence) -> bool:
    a = b = 0
    for x, y in zip(lam, mu):
        a += x
        b += y
        if a > b:
            return False
    return a == b


def dominance_leq(lam: Sequence, mu: Sequence) -> bool:
    """``lam <= mu`` in the dominance order on dominant vectors of equal length.

    >>> dominance_leq((1, 1, 0), (2, 0, 0))
    True
    >>> dominance_leq((2, 0, 0), (1, 1, 0))
    False
    """
    if len(lam) != len(mu):
        raise ValueError(f"length mismatch: {len(lam)} vs {len(mu)}")
    if not (is_dominant(lam) and is_dominant(mu)):
        raise ValueError(f"dominance order needs weakly decreasing input: {tuple(lam)}, {tuple(mu)}")
    return _partial_sums_leq(lam, mu)


def in_polytope(v: Sequence, mu: Sequence) -> bool:
    """Membership of a rational vector in the convex hull of the S_n-orbit of ``mu``.

    Decided by majorization: ``v`` lies in P_mu iff its dominant rearrangement
    is below ``mu`` in the dominance order.
    """
    if len(v) != len(mu):
        raise ValueError(f"length mismatch: {len(v)} vs {len(mu)}")
    return _partial_sums_leq(sorted(v, reverse=True), sorted(mu, reverse=True))


def sp_weyl_group(g: int) -> list[tuple[int, ...]]:
    """Permutations of ``range(2g)`` commuting with ``j -> 2g-1-j``, one-line notation.

    This is the finite Weyl group of Sp_2g (signed permutations) inside S_2g.
    """
    n = 2 * g
    out = []
    for pairs in itertools.permutations(range(g)):
        for flips in itertools.product((False, True), repeat=g):
            w = [0] * n
            for j in range(g):
                a, b = pairs[j], n - 1 - pairs[j]
                if flips[j]:
                    a, b = b, a
                w[j], w[n - 1 - j] = a, b
            out.append(tuple(w))
    return out


@lru_cache(maxsize=None)
def sp_orbit(mu: tuple) -> tuple[tuple, ...]:
    """Distinct points of the W_0(Sp_2g)-orbit of ``mu``, sorted."""
    n = len(mu)
    if n % 2:
        raise ValueError(f"symplectic orbit needs even length, got {n}")
    pts = set()
    for w in sp_weyl_group(n // 2):
        v = [None] * n
        for j, a in enumerate(mu):
            v[w[j]] = a
        pts.add(tuple(v))
    return tuple(sorted(pts))


def hull_contains(points: Sequence[Sequence], v: Sequence) -> bool:
    """Exact test of whether ``v`` is a convex combination of ``points``.

    Phase one of the simplex method over the rationals with Bland's rule:
    minimise the artificial slack of ``sum_k lam_k p_k = v, sum_k lam_k = 1``.
    """
    pts = [tuple(Fraction(a) for a in p) for p in dict.fromkeys(tuple(p) for p in points)]
    if not pts:
        return False
    dim = len(v)
    if any(len(p) != dim for p in pts):
        raise ValueError("points and target differ in dimension")
    rows = [[p[i] for p in pts] + [Fraction(v[i])] for i in range(dim)]
    rows.append([Fraction(1)] * len(pts) + [Fraction(1)])
    for r in rows:
        if r[-1] < 0:
            r[:] = [-a for a in r]
    nvar, m = len(pts), len(rows)
    # tableau columns: structural variables, then one artificial per row, then rhs
    tab = []
    for i, r in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(r[:-1] + art + [r[-1]])
    basis = [nvar + i for i in range(m)]
    width = nvar + m
    cost = [-sum(tab[i][j] for i in range(m)) for j in range(nvar)] + [Fraction(0)] * m
    value = -sum(tab[i][-1] for i in range(m))
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            return value == 0
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # unbounded below cannot happen for a phase-one objective bounded by 0
            raise ArithmeticError("phase-one simplex unbounded")
        piv = best[1]
        prow = tab[piv]
        pa = prow[enter]
        prow[:] = [a / pa for a in prow]
        for i in range(m):
            if i != piv and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i][:] = [a - f * b for a, b in zip(tab[i], prow)]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, prow[:-1])]
        value -= f * prow[-1]
        basis[piv] = enter


@lru_cache(maxsize=1 << 16)
def _in_polytope_sp(v: tuple, mu: tuple) -> bool:
    if sum(v) != sum(mu):
        return False
    lo, hi = min(mu), max(mu)
    if any(a < lo or a > hi for a in v):
        return False
    return hull_contains(sp_orbit(mu), v)


def in_polytope_sp(v: Sequence, mu: Sequence) -> bool:
    """Membership in the convex hull of the W_0(Sp_2g)-orbit of ``mu``, exactly."""
    if len(v) != len(mu):
        raise ValueError(f"length mismatch: {len(v)} vs {len(mu)}")
    if len(mu) % 2:
        raise ValueError("symplectic polytope needs even rank")
    return _in_polytope_sp(tuple(Fraction(a) for a in v), tuple(Fraction(a) for a in mu))


@dataclass(frozen=True)
class MuPolytope:
    mu: tuple
    group: str = GL

    def __post_init__(self):
        if not is_dominant(self.mu):
            raise ValueError(f"mu must be weakly decreasing: {self.mu}")
        if self.group not in (GL, GSP):
            raise ValueError(f"unknown group {self.group!r}")
        if self.group == GSP and len(self.mu) % 2:
            raise ValueError("GSp polytope needs even rank")

    @property
    def rank(self) -> int:
        return len(self.mu)

    def __contains__(self, v: Sequence) -> bool:
        if self.group == GL:
            return in_polytope(v, self.mu)
        return in_polytope_sp(v, self.mu)


@lru_cache(maxsize=1 << 20)
def _leq(x: AffineElement, y: AffineElement) -> bool:
    ly = length(y)
    lx = length(x)
    if lx >= ly:
        return x == y
    for i in range(len(y.t)):
        if has_left_descent(y, i):
            break
    sy = left_mult(i, y)
    if has_left_descent(x, i):
        return _leq(left_mult(i, x), sy)
    return _leq(x, sy)


def bruhat_leq(x: AffineElement, y: AffineElement) -> bool:
    """Bruhat order; elements in different Omega-components are incomparable.

    Uses the lifting property on the W_aff parts: if ``s y < y`` then
    ``x <= y`` iff ``s x <= s y`` (when ``s x < x``) or ``x <= s y`` (otherwise).
    """
    if len(x.t) != len(y.t):
        raise ValueError(f"rank mismatch: {len(x.t)} vs {len(y.t)}")
    if omega_component(x) != omega_component(y):
        return False
    return _leq(waff_part(x), waff_part(y))


def maximal_elements(elements: Iterable[AffineElement]) -> set[AffineElement]:
    """Elements with nothing strictly Bruhat-larger in the collection.

    Processing by decreasing length, an element is non-maximal iff it lies
    below a maximal element already found.
    """
    maxima: list[AffineElement] = []
    for x in sorted(set(elements), key=length, reverse=True):
        if not any(bruhat_leq(x, m) for m in maxima):
            maxima.append(x)
    return set(maxima)
