"""
The extended affine Weyl group of GL_n, realised as Z^n semidirect S_n.

An element is stored as a pair ``(t, w)``: an integer translation vector and a
permutation of ``range(n)`` in one-line notation.  It acts on vectors by

    x(v) = t + w(v),    w(v)[w[j]] = v[j]

so ``w`` carries the entry in position ``j`` to position ``w[j]``.  With this
convention ``t_u * w * t_v * w^-1 == t_(u + w(v))`` holds literally.

Simple reflections are numbered ``0..n-1``: ``s_i`` for ``i >= 1`` swaps
positions ``i-1`` and ``i`` (the 1-based adjacent transposition), and ``s_0``
is the affine reflection ``v -> v - (v_1 - v_n - 1)(e_1 - e_n)``.

>>> x = AffineElement((1, 0), (1, 0))
>>> act(x, (2, 3))
(4, 2)
>>> length(translation_element((1, 1, 0)))
2
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

__all__ = [
    "AffineElement", "identity", "simple_reflection", "tau", "compose",
    "inverse", "act", "translation_element", "length", "reduced_word",
    "from_word", "omega_component", "waff_part", "has_left_descent",
    "left_mult", "right_mult", "element_to_json", "element_from_json",
]


class AffineElement(NamedTuple):
    """``t`` is the translation part, ``w`` a 0-based one-line permutation."""
    t: tuple[int, ...]
    w: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.t)

    @classmethod
    def build(cls, t: Sequence[int], w: Sequence[int], one_based: bool = False) -> "AffineElement":
        """Validated constructor."""
        t = tuple(int(a) for a in t)
        w = tuple(int(a) - (1 if one_based else 0) for a in w)
        if len(t) != len(w):
            raise ValueError(f"translation length {len(t)} != permutation length {len(w)}")
        if sorted(w) != list(range(len(w))):
            raise ValueError(f"not a permutation: {w}")
        return cls(t, w)

    def __repr__(self) -> str:
        return f"AffineElement(t={self.t}, w={tuple(a + 1 for a in self.w)})"


def identity(n: int) -> AffineElement:
    return AffineElement((0,) * n, tuple(range(n)))


def simple_reflection(n: int, i: int) -> AffineElement:
    if not 0 <= i < n or n < 2:
        raise ValueError(f"no simple reflection s_{i} for n={n}")
    w = list(range(n))
    t = [0] * n
    if i == 0:
        w[0], w[n - 1] = n - 1, 0
        t[0], t[n - 1] = 1, -1
    else:
        w[i - 1], w[i] = i, i - 1
    return AffineElement(tuple(t), tuple(w))


def tau(n: int, r: int = 1) -> AffineElement:
    """The length-zero element with Omega-component ``r``.

    ``tau(n)`` rotates the base alcove: it sends vertex ``omega_i`` to
    ``omega_{i+1}``.
    """
    one = AffineElement((1,) + (0,) * (n - 1), tuple((j + 1) % n for j in range(n)))
    base = one if r >= 0 else inverse(one)
    x = identity(n)
    for _ in range(abs(r)):
        x = compose(x, base)
    return x


def _check_rank(x: AffineElement, y: AffineElement) -> None:
    if len(x.t) != len(y.t):
        raise ValueError(f"rank mismatch: {len(x.t)} vs {len(y.t)}")


def _permute(w: Sequence[int], v: Sequence) -> list:
    out = [None] * len(v)
    for j, a in enumerate(v):
        out[w[j]] = a
    return out


def compose(x: AffineElement, y: AffineElement) -> AffineElement:
    """The product ``x y``, acting as ``x`` after ``y``."""
    _check_rank(x, y)
    xt, xw = x
    t = list(xt)
    for j, a in enumerate(y.t):
        t[xw[j]] += a
    return AffineElement(tuple(t), tuple(xw[k] for k in y.w))


def inverse(x: AffineElement) -> AffineElement:
    t, w = x
    return AffineElement(tuple(-t[w[j]] for j in range(len(t))), tuple(_permute(w, range(len(w)))))


def act(x: AffineElement, v: Sequence) -> tuple:
    """Apply ``x`` to a vector of ints or Fractions."""
    if len(v) != len(x.t):
        raise ValueError(f"vector length {len(v)} != rank {len(x.t)}")
    out = list(x.t)
    for j, a in enumerate(v):
        out[x.w[j]] += a
    return tuple(out)


def translation_element(mu: Sequence) -> AffineElement:
    t = []
    for a in mu:
        if Fraction(a).denominator != 1:
            raise ValueError(f"translation needs integer entries, got {tuple(mu)}")
        t.append(int(a))
    return AffineElement(tuple(t), tuple(range(len(t))))


def omega_component(x: AffineElement) -> int:
    return sum(x.t)


def _scaled_barycenter_image(x: AffineElement) -> list[int]:
    # n times the image of the base-alcove barycenter ((n-1)/n, ..., 1/n, 0)
    n = len(x.t)
    y = [n * a for a in x.t]
    for j, pos in enumerate(x.w):
        y[pos] += n - 1 - j
    return y


@lru_cache(maxsize=1 << 18)
def length(x: AffineElement) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image."""
    n = len(x.t)
    y = _scaled_barycenter_image(x)
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            total += abs((y[a] - y[b]) // n)
    return total


def has_left_descent(x: AffineElement, i: int) -> bool:
    """True iff ``length(s_i x) < length(x)``.

    The wall of ``s_i`` separates the base alcove from ``x(a)`` exactly when
    the barycenter image lies on the far side, so only two coordinates are
    inspected.
    """
    n = len(x.t)
    if i == 0:
        p, q = x.w.index(0), x.w.index(n - 1)
        return n * (x.t[0] - x.t[n - 1]) + (n - 1 - p) - (n - 1 - q) > n
    p, q = x.w.index(i - 1), x.w.index(i)
    return n * (x.t[i - 1] - x.t[i]) + (n - 1 - p) - (n - 1 - q) < 0


def left_mult(i: int, x: AffineElement) -> AffineElement:
    """``s_i x`` without building ``s_i``."""
    n = len(x.t)
    t = list(x.t)
    a, b = (0, n - 1) if i == 0 else (i - 1, i)
    t[a], t[b] = t[b], t[a]
    if i == 0:
        t[0] += 1
        t[n - 1] -= 1
    w = tuple(b if k == a else a if k == b else k for k in x.w)
    return AffineElement(tuple(t), w)


def right_mult(x: AffineElement, i: int) -> AffineElement:
    """``x s_i`` without building ``s_i``."""
    n = len(x.t)
    w = list(x.w)
    a, b = (0, n - 1) if i == 0 else (i - 1, i)
    t = x.t
    if i == 0:
        t = list(t)
        t[w[0]] += 1
        t[w[n - 1]] -= 1
        t = tuple(t)
    w[a], w[b] = w[b], w[a]
    return AffineElement(t, tuple(w))


def reduced_word(x: AffineElement) -> list[int]:
    """A reduced word ``[i_1, ..., i_k]`` with ``x = s_(i_1) ... s_(i_k) tau^r``.

    Found by greedy descent: strip the smallest-index left descent until a
    length-zero element remains.
    """
    word = []
    n = len(x.t)
    while True:
        for i in range(n):
            if has_left_descent(x, i):
                word.append(i)
                x = left_mult(i, x)
                break
        else:
            return word


def from_word(word: Sequence[int], n: int, r: int = 0) -> AffineElement:
    """Inverse of :func:`reduced_word`: ``s_(i_1) ... s_(i_k) tau^r``."""
    x = tau(n, r)
    for i in reversed(word):
        x = left_mult(i, x)
    return x


def waff_part(x: AffineElement) -> AffineElement:
    """``x tau^-r``, the component of ``x`` in the affine Weyl group."""
    return compose(x, tau(len(x.t), -omega_component(x)))


def element_to_json(x: AffineElement) -> dict:
    return {"t": list(x.t), "w": [a + 1 for a in x.w]}


def element_from_json(obj: dict) -> AffineElement:
    return AffineElement.build(obj["t"], obj["w"], one_based=True)
