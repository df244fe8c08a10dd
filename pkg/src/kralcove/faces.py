"""
Faces of type I: periodic families of lattice points indexing the cosets
W~/W_I (parahoric level structures).  A face is stored on the representatives
``0..n-1`` of its index set; any other index is reached through
``v_(i+n) = v_i + (1, ..., 1)``.

The symplectic side lives inside GL_2g through the involution
``theta(x_1..x_2g) = (-x_2g, ..., -x_1)``; a G-face satisfies
``v_(2g-i) = theta(v_i) + (c, ..., c)`` for one integer ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .weyl import AffineElement, act

__all__ = [
    "FaceType", "Face", "omega", "base_face", "validate_face",
    "face_from_element", "project", "act_on_face", "fiber_extensions",
    "theta", "is_G_face", "eta_vertices", "half_indices",
    "element_from_alcove", "face_to_json", "face_from_json", "sort_faces",
]


@dataclass(frozen=True, order=True)
class FaceType:
    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) % self.n for i in self.indices))) if self.n > 0 else ()
        if not idx:
            raise ValueError("a face type needs a nonempty index set")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def iwahori(cls, n: int) -> "FaceType":
        return cls(n, tuple(range(n)))

    @property
    def is_iwahori(self) -> bool:
        return len(self.indices) == self.n

    @property
    def symmetric(self) -> bool:
        """Whether the preimage of the index set in Z is stable under negation."""
        s = set(self.indices)
        return all((-i) % self.n in s for i in s)

    def issubset(self, other: "FaceType") -> bool:
        return self.n == other.n and set(self.indices) <= set(other.indices)


def omega(n: int, i: int) -> tuple[int, ...]:
    """Vertex ``omega_i = (1^i, 0^(n-i))`` of the base alcove, extended periodically."""
    q, r = divmod(i, n)
    return tuple(q + (1 if j < r else 0) for j in range(n))


@dataclass(frozen=True, order=True)
class Face:
    type: FaceType
    vectors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_map(cls, n: int, vectors: Mapping[int, Sequence[int]]) -> "Face":
        ftype = FaceType(n, tuple(vectors))
        if len(ftype.indices) != len(vectors):
            raise ValueError("face indices must be distinct representatives mod n")
        by_rep = {int(i) % n: tuple(int(a) for a in v) for i, v in vectors.items()}
        return cls(ftype, tuple(by_rep[i] for i in ftype.indices))

    @property
    def n(self) -> int:
        return self.type.n

    @property
    def indices(self) -> tuple[int, ...]:
        return self.type.indices

    def as_map(self) -> dict[int, tuple[int, ...]]:
        return dict(zip(self.type.indices, self.vectors))

    def vector(self, i: int) -> tuple[int, ...]:
        """``v_i`` for any integer ``i`` whose class lies in the index set."""
        q, r = divmod(i, self.n)
        try:
            v = self.vectors[self.type.indices.index(r)]
        except ValueError:
            raise KeyError(f"index {i} not in face type {self.type.indices}") from None
        return tuple(a + q for a in v)


def base_face(ftype: FaceType) -> Face:
    return Face(ftype, tuple(omega(ftype.n, i) for i in ftype.indices))


def validate_face(f: Face) -> bool:
    """Check the three face conditions (periodicity is built into the storage)."""
    n, idx = f.n, f.indices
    if any(len(v) != n for v in f.vectors):
        return False
    chain = list(f.vectors) + [tuple(a + 1 for a in f.vectors[0])]
    for a, b in zip(chain, chain[1:]):
        if any(x > y for x, y in zip(a, b)):
            return False
    s0 = sum(f.vectors[0])
    return all(sum(v) - s0 == i - idx[0] for i, v in zip(idx, f.vectors))


def face_from_element(x: AffineElement, ftype: FaceType) -> Face:
    return Face(ftype, tuple(act(x, omega(ftype.n, i)) for i in ftype.indices))


def act_on_face(x: AffineElement, f: Face) -> Face:
    return Face(f.type, tuple(act(x, v) for v in f.vectors))


def project(f: Face, target: FaceType) -> Face:
    """Restrict a face to a smaller index set."""
    if not target.issubset(f.type):
        raise ValueError(f"{target.indices} is not a subset of {f.indices}")
    m = f.as_map()
    return Face(target, tuple(m[i] for i in target.indices))


def fiber_extensions(vk: Sequence[int], vl: Sequence[int]) -> list[tuple[int, ...]]:
    """All ``w`` with ``vk <= w <= vl`` and ``sum(w) = sum(vk) + 1``, sorted.

    >>> fiber_extensions((0, 0), (1, 1))
    [(0, 1), (1, 0)]
    """
    if len(vk) != len(vl):
        raise ValueError("length mismatch")
    if any(a > b for a, b in zip(vk, vl)) or sum(vl) - sum(vk) < 1:
        raise ValueError(f"need vk <= vl with sum(vl) > sum(vk): {tuple(vk)}, {tuple(vl)}")
    out = []
    for m in range(len(vk)):
        if vl[m] > vk[m]:
            w = list(vk)
            w[m] += 1
            out.append(tuple(w))
    return sorted(out)


def theta(v: Sequence) -> tuple:
    if len(v) % 2:
        raise ValueError(f"theta needs even length, got {len(v)}")
    return tuple(-a for a in reversed(v))


def half_indices(ftype: FaceType) -> list[int]:
    """Representatives in ``0..g``; they determine a symmetric index set."""
    return [i for i in ftype.indices if 2 * i <= ftype.n]


def is_G_face(f: Face) -> Optional[int]:
    """The shift ``c`` with ``v_(2g-i) = theta(v_i) + (c^2g)`` for all i, or None."""
    if f.n % 2 or not f.type.symmetric:
        raise ValueError("G-faces need a symmetric index set in even rank")
    c = None
    for i in f.indices:
        diff = {a - b for a, b in zip(f.vector(f.n - i), theta(f.vector(i)))}
        if len(diff) != 1:
            return None
        (d,) = diff
        if c is None:
            c = d
        elif c != d:
            return None
    return c


def eta_vertices(g: int, ftype: FaceType) -> dict[int, tuple[Fraction, ...]]:
    """``eta_i = (omega_i + omega_(2g-i)) / 2`` for the half indices of a symmetric type."""
    if ftype.n != 2 * g or not ftype.symmetric:
        raise ValueError("eta vertices need a symmetric type of rank 2g")
    n = 2 * g
    return {i: tuple(Fraction(a + b, 2) for a, b in zip(omega(n, i), omega(n, n - i)))
            for i in half_indices(ftype)}


def element_from_alcove(f: Face) -> AffineElement:
    """The unique element sending the base alcove to the alcove ``f``."""
    if not f.type.is_iwahori:
        raise ValueError("only alcoves (full index set) determine an element")
    n = f.n
    w = []
    for j in range(n):
        step = [b - a for a, b in zip(f.vector(j), f.vector(j + 1))]
        if sorted(step) != [0] * (n - 1) + [1]:
            raise ValueError(f"not an alcove: step {j} is {step}")
        w.append(step.index(1))
    return AffineElement.build(f.vectors[0], w)


def face_to_json(f: Face) -> dict:
    return {"n": f.n, "I": list(f.indices), "v": {str(i): list(v) for i, v in zip(f.indices, f.vectors)}}


def face_from_json(obj: Mapping) -> Face:
    f = Face.from_map(int(obj["n"]), {int(i): v for i, v in obj["v"].items()})
    if list(f.indices) != sorted(int(i) for i in obj["I"]):
        raise ValueError("face index list does not match its vectors")
    return f


def sort_faces(faces: Iterable[Face]) -> list[Face]:
    return sorted(set(faces))
