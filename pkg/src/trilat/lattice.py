"""Integer coordinates for the triangular lattice.

Points are pairs (a, b) of integers, representing a*(1, 0) + b*(1/2, sqrt(3)/2)
in the plane.  All geometry in this package is done on these integer pairs:
rotations by 60 degrees and the squared Euclidean norm are exact integer maps,
so no floating point ever enters a correctness argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple


class LatticePoint(NamedTuple):
    a: int
    b: int

    def __add__(self, other):
        return LatticePoint(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return LatticePoint(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return LatticePoint(-self.a, -self.b)

    def to_cartesian(self) -> tuple[float, float]:
        """Float embedding, for rendering only."""
        return (self.a + self.b / 2, self.b * (3 ** 0.5) / 2)


def norm(p: LatticePoint | tuple[int, int]) -> int:
    """Squared Euclidean length of a lattice vector; zero iff the vector is zero."""
    a, b = p
    return a * a + a * b + b * b


def rotate60(p: LatticePoint | tuple[int, int], direction: int) -> LatticePoint:
    """Rotate a lattice vector by 60 degrees; direction +1 counterclockwise, -1 clockwise."""
    a, b = p
    if direction == 1:
        return LatticePoint(-b, a + b)
    if direction == -1:
        return LatticePoint(a + b, -a)
    raise ValueError("direction must be +1 or -1")


@dataclass(frozen=True)
class TriangleRegion:
    """Upright n-row triangle T_n: points (a, b) with 0 <= b <= n-1, 0 <= a <= n-1-b."""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    def contains(self, p) -> bool:
        a, b = p
        return 0 <= b <= self.n - 1 and 0 <= a <= self.n - 1 - b

    def points(self) -> Iterator[LatticePoint]:
        for b in range(self.n):
            for a in range(self.n - b):
                yield LatticePoint(a, b)

    def size(self) -> int:
        return self.n * (self.n + 1) // 2


@dataclass(frozen=True)
class StripeWindow:
    """Finite window of the k-row stripe: 0 <= b <= k-1, x_min <= a <= x_max."""
    k: int
    x_min: int
    x_max: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")

    def contains(self, p) -> bool:
        a, b = p
        return 0 <= b <= self.k - 1 and self.x_min <= a <= self.x_max

    def points(self) -> Iterator[LatticePoint]:
        for b in range(self.k):
            for a in range(self.x_min, self.x_max + 1):
                yield LatticePoint(a, b)

    def size(self) -> int:
        return self.k * max(0, self.x_max - self.x_min + 1)


@dataclass(frozen=True)
class PeriodicStripe:
    """Infinite k-row stripe with (a, b) identified with (a + period, b)."""
    k: int
    period: int

    def __post_init__(self):
        if self.k < 1 or self.period < 1:
            raise ValueError("k and period must be positive")

    def contains(self, p) -> bool:
        # Membership constrains b only; a wraps mod period.
        return 0 <= p[1] <= self.k - 1

    def reduce(self, p) -> LatticePoint:
        return LatticePoint(p[0] % self.period, p[1])

    def fundamental_domain(self) -> Iterator[LatticePoint]:
        for b in range(self.k):
            for a in range(self.period):
                yield LatticePoint(a, b)

    def size(self) -> int:
        return self.k * self.period


Region = TriangleRegion | StripeWindow | PeriodicStripe


def contains(region: Region, p) -> bool:
    return region.contains(p)


def symmetries(n: int) -> list[Callable[[LatticePoint], LatticePoint]]:
    """The six maps of the dihedral symmetry group of T_n, identity first."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n - 1

    def identity(p):
        return LatticePoint(p[0], p[1])

    def rot(p):
        return LatticePoint(p[1], m - p[0] - p[1])

    def rot2(p):
        return LatticePoint(m - p[0] - p[1], p[0])

    def refl(p):
        return LatticePoint(m - p[0] - p[1], p[1])

    def refl_rot(p):
        return rot(refl(p))

    def refl_rot2(p):
        return rot2(refl(p))

    return [identity, rot, rot2, refl, refl_rot, refl_rot2]


def row_col_to_point(n: int, row: int, col: int) -> LatticePoint:
    """Convert 1-indexed (row from top, position in row) to lattice coordinates."""
    return LatticePoint(col - 1, n - row)


def point_to_row_col(n: int, p: LatticePoint) -> tuple[int, int]:
    return (n - p.b, p.a + 1)
