"""
Exact arithmetic in Q[y]/(y^m - p) and its valuation ring Z_(p)[y]/(y^m - p).

``y^m - p`` is Eisenstein, so the quotient is a field and an element
``sum c_k y^k`` is integral exactly when every ``c_k`` has denominator prime
to ``p``.  The maximal ideal of the integral elements is ``(y)``; reduction
keeps the constant coefficient modulo ``p``.

Matrices are plain lists of row lists; polynomials are coefficient lists,
lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class ScalarRing:
    """``p``: the rational prime; ``m``: ``y^m = p``; ``e``: ramification of F/F_0."""
    p: int
    m: int = 1
    e: int = 1

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.m < 1 or self.e < 1:
            raise ValueError("m and e must be positive")

    def __call__(self, value: Union["RingElem", Number, Sequence[Number]]) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring != self:
                raise ValueError("element belongs to a different ring")
            return value
        if isinstance(value, (int, Fraction)):
            return RingElem(self, (Fraction(value),) + (Fraction(0),) * (self.m - 1))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) > self.m:
            raise ValueError(f"at most {self.m} coefficients, got {len(coeffs)}")
        return RingElem(self, tuple(coeffs + [Fraction(0)] * (self.m - len(coeffs))))

    @property
    def zero(self) -> "RingElem":
        return self(0)

    @property
    def one(self) -> "RingElem":
        return self(1)

    @property
    def y(self) -> "RingElem":
        """The generator; for ``m = 1`` this is ``p`` itself."""
        if self.m == 1:
            return self(self.p)
        return self([0, 1])

    def power_of_y(self, k: int) -> "RingElem":
        q, r = divmod(k, self.m)
        c = [Fraction(0)] * self.m
        c[r] = Fraction(self.p) ** q
        return RingElem(self, tuple(c))


class RingElem:
    __slots__ = ("ring", "c")

    def __init__(self, ring: ScalarRing, c: tuple[Fraction, ...]):
        self.ring = ring
        self.c = c

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ValueError("mixing elements of different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, tuple(-a for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, tuple(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m, p = self.ring.m, self.ring.p
        out = [Fraction(0)] * m
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if b:
                    k = i + j
                    if k >= m:
                        out[k - m] += p * a * b
                    else:
                        out[k] += a * b
        return RingElem(self.ring, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "RingElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.ring.m
        # columns: self * y^k; solve for the coefficients of the inverse
        cols = [(self * self.ring.power_of_y(k)).c for k in range(m)]
        mat = [[cols[k][i] for k in range(m)] for i in range(m)]
        rhs = [[Fraction(1 if i == 0 else 0)] for i in range(m)]
        sol = _solve_rational(mat, rhs)
        return RingElem(self.ring, tuple(row[0] for row in sol))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ring(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring == other.ring and self.c == other.c

    def __hash__(self):
        return hash((self.ring, self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_integral(self) -> bool:
        return all(a.denominator % self.ring.p for a in self.c)

    def valuation(self) -> Optional[int]:
        """``y``-adic valuation (None for zero)."""
        p, m = self.ring.p, self.ring.m
        best = None
        for k, a in enumerate(self.c):
            if a:
                v = 0
                num, den = a.numerator, a.denominator
                while num % p == 0:
                    num //= p
                    v += 1
                while den % p == 0:
                    den //= p
                    v -= 1
                v = m * v + k
                best = v if best is None else min(best, v)
        return best

    def reduce(self) -> int:
        """Image in the residue field F_p."""
        if not self.is_integral():
            raise ValueError(f"{self} is not integral at p={self.ring.p}")
        a = self.c[0]
        return a.numerator * pow(a.denominator, -1, self.ring.p) % self.ring.p

    def to_json(self) -> list:
        return [int(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}" for a in self.c]

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(str(a) if k == 0 else f"{a}*y^{k}" if k > 1 else f"{a}*y")
        return " + ".join(terms) or "0"


# -- rational Gaussian elimination (used for field inverses) ------------------

def _solve_rational(mat, rhs):
    n = len(mat)
    aug = [list(mat[i]) + list(rhs[i]) for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- polynomials --------------------------------------------------------------

def poly(ring: ScalarRing, coeffs: Sequence) -> list[RingElem]:
    """Coefficients lowest degree first, trailing zeros stripped."""
    out = [ring(c) for c in coeffs]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def poly_mul(a: Sequence[RingElem], b: Sequence[RingElem]) -> list[RingElem]:
    ring = a[0].ring
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return poly(ring, out)


def poly_product(ring: ScalarRing, polys) -> list[RingElem]:
    out = [ring.one]
    for q in polys:
        out = poly_mul(out, q)
    return out


def poly_str(coeffs: Sequence[RingElem]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else "T" if k == 1 else f"T^{k}"
        if not mono:
            terms.append(f"({c})")
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"({c})*{mono}")
    return " + ".join(terms) or "0"


# -- matrices -----------------------------------------------------------------

Matrix = list  # list of row lists


def shape(a: Matrix, cols: Optional[int] = None) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else (cols or 0))


def zeros(ring: ScalarRing, rows: int, cols: int) -> Matrix:
    return [[ring.zero] * cols for _ in range(rows)]


def identity(ring: ScalarRing, n: int) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix, ring: ScalarRing) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError(f"shape mismatch {len(a[0])} vs {inner}")
    out = []
    for row in a:
        new = []
        for j in range(cols):
            s = ring.zero
            for k in range(inner):
                x = row[k]
                if not x.is_zero():
                    s = s + x * b[k][j]
            new.append(s)
        out.append(new)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a: Matrix, cols: int = 0) -> Matrix:
    if not a:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def block_diag(ring: ScalarRing, blocks: Sequence[tuple[Matrix, int, int]]) -> Matrix:
    """Blocks given as ``(matrix, rows, cols)`` so empty blocks keep their shape."""
    rows = sum(r for _, r, _ in blocks)
    cols = sum(c for _, _, c in blocks)
    out = zeros(ring, rows, cols)
    r0 = c0 = 0
    for mat, r, c in blocks:
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = mat[i][j]
        r0 += r
        c0 += c
    return out


def independent_rows(a: Matrix, ring: ScalarRing) -> list[int]:
    """Indices of a maximal set of linearly independent rows (greedy, over the fraction field)."""
    basis: list[tuple[int, list[RingElem]]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, row in enumerate(a):
        v = list(row)
        for piv, b in basis:
            if not v[piv].is_zero():
                f = v[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            continue
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        basis.append((piv, v))
        chosen.append(idx)
    return chosen


def solve_square(a: Matrix, b: Matrix, ring: ScalarRing) -> Matrix:
    """Solve ``a x = b`` for invertible square ``a`` over the fraction field."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def char_poly(a: Matrix, ring: ScalarRing) -> list[RingElem]:
    """``det(T - a)`` by the Faddeev-LeVerrier recursion (exact over Q-algebras)."""
    n = len(a)
    coeffs = [ring.zero] * (n + 1)
    coeffs[n] = ring.one
    mk = zeros(ring, n, n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk, ring)
        c = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] = mk[i][i] + c
        am = mat_mul(a, mk, ring)
        tr = ring.zero
        for i in range(n):
            tr = tr + am[i][i]
        coeffs[n - k] = tr * Fraction(-1, k)
    return coeffs


# -- matrices over F_p --------------------------------------------------------

def rank_mod_p(a: Sequence[Sequence[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in a]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def matmul_mod_p(a, b, p: int):
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) % p for j in range(cols)] for row in a]


def solve_mod_p(a, b, p: int):
    """Some ``x`` with ``a x = b`` over F_p, or None if inconsistent."""
    rows, cols = len(a), (len(a[0]) if a else 0)
    nb = len(b[0]) if b else 0
    aug = [[x % p for x in a[i]] + [x % p for x in b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(any(aug[i][cols:]) for i in range(r, rows)):
        return None
    x = [[0] * nb for _ in range(cols)]
    for i, col in enumerate(pivots):
        x[col] = aug[i][cols:]
    return x


def elem_from_json(ring: ScalarRing, obj) -> RingElem:
    if isinstance(obj, (int, str)):
        obj = [obj]
    return ring([Fraction(c) for c in obj])
