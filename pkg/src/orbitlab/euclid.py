"""Exact rational Euclidean isometries and points.

Everything downstream (orbit balls, Dirichlet domains, cut-locus bounds)
depends on two guarantees floating point cannot give: group elements
compare equal exactly, and ball boundaries ``distance <= r`` are decided
without rounding. So coordinates are `fractions.Fraction`, distances are
kept squared, and square roots appear only in reporting helpers or as
exactly-decided comparisons like ``sqrt(d2) <= r + sqrt(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


def frac(value) -> Fraction:
    """Coerce ints, Fractions, and strings like '3/10' or '0.3'.

    Floats are converted exactly (binary value), which is what the Monte
    Carlo samplers need; prefer strings for human-entered constants.
    """
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: Vector, c) -> Vector:
    c = frac(c)
    return tuple(c * x for x in a)


def vec_dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_norm_sq(a: Vector) -> Fraction:
    return vec_dot(a, a)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(row) for row in rows)


def mat_identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_vec(a: Matrix, x: Vector) -> Vector:
    return tuple(vec_dot(row, x) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = mat_transpose(b)
    return tuple(tuple(vec_dot(row, col) for col in bt) for row in a)


def is_orthogonal(a: Matrix) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    return mat_mul(a, mat_transpose(a)) == mat_identity(n)


def solve_square(a: Matrix, b: Vector) -> Vector:
    """Solve a x = b exactly for square invertible a."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return tuple(m[i][n] for i in range(n))


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = [solve_square(a, tuple(Fraction(1 if i == j else 0) for i in range(n)))
            for j in range(n)]
    return mat_transpose(tuple(cols))


def mat_rank(rows: Sequence[Vector]) -> int:
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        inv = Fraction(1) / work[row][col]
        work[row] = [v * inv for v in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col] != 0:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[row])]
        row += 1
        rank += 1
        if row == len(work):
            break
    return rank


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), tight to 1/denominator."""
    x = frac(x)
    if x <= 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    return Fraction(math.isqrt(n * d) + 1, d)


def sqrt_lower(x: Fraction) -> Fraction:
    x = frac(x)
    if x <= 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    return Fraction(math.isqrt(n * d), d)


def sqrt_float(x) -> float:
    x = frac(x)
    return math.sqrt(x.numerator / x.denominator)


def leq_radius_plus_sqrt(d2: Fraction, r: Fraction, q: Fraction) -> bool:
    """Decide sqrt(d2) <= r + sqrt(q) exactly, for r, q >= 0."""
    a = d2 - r * r - q
    if a <= 0:
        return True
    return a * a <= 4 * r * r * q


def sqrt_leq_sqrt_plus_sqrt(a: Fraction, b: Fraction, c: Fraction) -> bool:
    """Decide sqrt(a) <= sqrt(b) + sqrt(c) exactly, for a, b, c >= 0."""
    t = a - b - c
    if t <= 0:
        return True
    return t * t <= 4 * b * c


@dataclass(frozen=True)
class Point:
    """A point of R^n with exact rational coordinates."""

    coords: Vector

    def __init__(self, coords):
        object.__setattr__(self, "coords", vec(coords))

    @classmethod
    def of(cls, *values) -> "Point":
        return cls(values)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def floats(self) -> tuple:
        return tuple(float(c) for c in self.coords)


def point_distance_sq(a: Point, b: Point) -> Fraction:
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"points in R^{a.dimension} and R^{b.dimension}")
    return vec_norm_sq(vec_sub(a.coords, b.coords))


@dataclass(frozen=True)
class Isometry:
    """A rigid motion x -> A x + v with exact rational entries.

    A must satisfy A A^T = I exactly; this is validated at construction
    so that every element ever built is a genuine isometry.
    """

    orthogonal: Matrix
    translation: Vector

    def __init__(self, orthogonal, translation):
        a = mat(orthogonal)
        v = vec(translation)
        if len(a) != len(v) or any(len(row) != len(v) for row in a):
            raise DimensionMismatch("matrix and translation sizes disagree")
        if not is_orthogonal(a):
            raise ValueError("orthogonal part must satisfy A*A^T = I exactly")
        object.__setattr__(self, "orthogonal", a)
        object.__setattr__(self, "translation", v)

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls(mat_identity(n), (Fraction(0),) * n)

    @classmethod
    def translation_by(cls, values) -> "Isometry":
        v = vec(values)
        return cls(mat_identity(len(v)), v)

    @property
    def dimension(self) -> int:
        return len(self.translation)

    @property
    def is_translation(self) -> bool:
        return self.orthogonal == mat_identity(self.dimension)

    def compose(self, other: "Isometry") -> "Isometry":
        """Return self after other: (self.compose(other))(x) = self(other(x))."""
        if self.dimension != other.dimension:
            raise DimensionMismatch("composing isometries of different dimensions")
        if self.is_translation:
            # common fast path: lattice translations compose by vector addition
            return Isometry(other.orthogonal, vec_add(other.translation, self.translation))
        a = mat_mul(self.orthogonal, other.orthogonal)
        v = vec_add(mat_vec(self.orthogonal, other.translation), self.translation)
        return Isometry(a, v)

    def __mul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        at = mat_transpose(self.orthogonal)
        return Isometry(at, vec_scale(mat_vec(at, self.translation), -1))

    def apply(self, p: Point) -> Point:
        if p.dimension != self.dimension:
            raise DimensionMismatch("isometry and point dimensions disagree")
        if self.is_translation:
            return Point(vec_add(p.coords, self.translation))
        return Point(vec_add(mat_vec(self.orthogonal, p.coords), self.translation))

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def displacement_sq(self, p: Point) -> Fraction:
        return point_distance_sq(self.apply(p), p)

    def to_obj(self) -> dict:
        return {
            "A": [[str(x) for x in row] for row in self.orthogonal],
            "v": [str(x) for x in self.translation],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "Isometry":
        return cls([[Fraction(x) for x in row] for row in obj["A"]],
                   [Fraction(x) for x in obj["v"]])

    def sort_key(self) -> tuple:
        flat = tuple(x for row in self.orthogonal for x in row) + self.translation
        return tuple((v.numerator, v.denominator) for v in flat)


def compose(f: Isometry, g: Isometry) -> Isometry:
    return f.compose(g)


def inverse(f: Isometry) -> Isometry:
    return f.inverse()


def apply(f: Isometry, p: Point) -> Point:
    return f.apply(p)
