"""Enumeration of equilateral triangles and classification of point pairs.

Every pair of distinct lattice points has exactly two apex completions (the
rotations of one endpoint about the other by +-60 degrees).  Enumeration walks
all unordered pairs of region points, emits the in-region apexes, and
deduplicates: each triangle is seen once per pair, i.e. three times.  This is
deliberately the simplest correct method and serves as the oracle for every
closed-form count in the counting module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import LatticePoint, PeriodicStripe, Region, TriangleRegion, norm, rotate60


@dataclass(frozen=True, order=True)
class EquilateralTriangle:
    """Three lattice points in canonical lexicographic order by (b, a)."""
    p1: LatticePoint
    p2: LatticePoint
    p3: LatticePoint

    @staticmethod
    def of(p: LatticePoint, q: LatticePoint, r: LatticePoint) -> "EquilateralTriangle":
        s1, s2, s3 = sorted((p, q, r), key=lambda t: (t.b, t.a))
        return EquilateralTriangle(s1, s2, s3)

    def vertices(self) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
        return (self.p1, self.p2, self.p3)

    def side_norm(self) -> int:
        return norm(self.p2 - self.p1)

    def is_valid(self) -> bool:
        d1 = norm(self.p2 - self.p1)
        d2 = norm(self.p3 - self.p2)
        d3 = norm(self.p3 - self.p1)
        return d1 == d2 == d3 > 0


def apex_candidates(p1: LatticePoint, p2: LatticePoint) -> tuple[LatticePoint, LatticePoint]:
    """The two points completing {p1, p2} to an equilateral triangle."""
    if p1 == p2:
        raise ValueError("degenerate pair")
    d = LatticePoint(p2[0] - p1[0], p2[1] - p1[1])
    return (p1 + rotate60(d, +1), p1 + rotate60(d, -1))


def enumerate_triangles(region: Region) -> list[EquilateralTriangle]:
    """All equilateral triangles with vertices in a finite region, each exactly once."""
    if isinstance(region, PeriodicStripe):
        raise ValueError("use windowed enumeration for periodic stripes")
    pts = list(region.points())
    found: set[EquilateralTriangle] = set()
    for i in range(len(pts)):
        p = pts[i]
        for j in range(i + 1, len(pts)):
            q = pts[j]
            for apex in apex_candidates(p, q):
                if region.contains(apex):
                    found.add(EquilateralTriangle.of(p, q, apex))
    return sorted(found)


def count_upright(region: Region) -> int:
    """Triangles that are translates of a dilated {(0,0),(s,0),(0,s)}, s >= 1."""
    count = 0
    for t in enumerate_triangles(region):
        p1, p2, p3 = t.vertices()
        s = p2.a - p1.a
        if p2.b == p1.b and s > 0 and p3 == LatticePoint(p1.a, p1.b + s):
            count += 1
    return count


@dataclass
class PairClassification:
    """Per-pair apex-completion counts and the (a0, a1, a2) tallies."""
    counts: dict[frozenset, int]
    a0: int
    a1: int
    a2: int

    def tallies(self) -> tuple[int, int, int]:
        return (self.a0, self.a1, self.a2)


def classify_pairs(region: Region) -> PairClassification:
    """Sort all unordered point pairs by their number of in-region apex completions."""
    if isinstance(region, PeriodicStripe):
        raise ValueError("classification requires a finite region")
    pts = list(region.points())
    counts: dict[frozenset, int] = {}
    tally = [0, 0, 0]
    for i in range(len(pts)):
        p = pts[i]
        for j in range(i + 1, len(pts)):
            q = pts[j]
            c = sum(1 for apex in apex_candidates(p, q) if region.contains(apex))
            counts[frozenset((p, q))] = c
            tally[c] += 1
    return PairClassification(counts, tally[0], tally[1], tally[2])
