"""Modified Steiner triple systems: r pairs uncovered, r pairs doubly covered.

A triple system on v points is "modified" with defect r when exactly r of the
C(v, 2) point pairs appear in no triple, exactly r appear in two, every other
pair appears in exactly one, and no pair appears more often.  Summing pair
multiplicities shows such a system always has exactly C(v, 2) / 3 triples, so
3 | C(v, 2) is a hard feasibility precondition independent of r.

The equilateral triangles of T_n, viewed as triples on its n(n+1)/2 points,
form such a system with r = a2(n).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .lattice import TriangleRegion
from .triangles import enumerate_triangles

HEADER = "trilat-triples v1"


@dataclass
class TripleSystem:
    v: int
    triples: list[frozenset]

    def __post_init__(self):
        seen = set()
        for t in self.triples:
            t = frozenset(t)
            if len(t) != 3 or not all(1 <= x <= self.v for x in t):
                raise ValueError(f"invalid triple {sorted(t)}")
            if t in seen:
                raise ValueError(f"duplicate triple {sorted(t)}")
            seen.add(t)


@dataclass
class PairProfile:
    """Histogram: pair multiplicity -> number of pairs."""
    histogram: dict[int, int]

    def count(self, multiplicity: int) -> int:
        return self.histogram.get(multiplicity, 0)


def profile(ts: TripleSystem) -> PairProfile:
    mult: dict[frozenset, int] = {}
    for t in ts.triples:
        for pair in combinations(sorted(t), 2):
            key = frozenset(pair)
            mult[key] = mult.get(key, 0) + 1
    hist: dict[int, int] = {}
    for m in mult.values():
        hist[m] = hist.get(m, 0) + 1
    hist[0] = comb(ts.v, 2) - len(mult)
    if hist[0] == 0:
        del hist[0]
    return PairProfile(hist)


def is_modified_sts(ts: TripleSystem) -> Optional[int]:
    """The defect r if the system is a modified triple system, else None."""
    prof = profile(ts)
    if any(m > 2 for m in prof.histogram):
        return None
    r = prof.count(0)
    if prof.count(2) != r:
        return None
    if prof.count(1) != comb(ts.v, 2) - 2 * r:
        return None
    return r


def triangle_system(n: int) -> TripleSystem:
    """The equilateral triangles of T_n as triples on its points (1-indexed canonically)."""
    pts = sorted(TriangleRegion(n).points(), key=lambda p: (p.b, p.a))
    index = {p: i + 1 for i, p in enumerate(pts)}
    triples = [frozenset(index[q] for q in t.vertices())
               for t in enumerate_triangles(TriangleRegion(n))]
    return TripleSystem(len(pts), triples)


def fano_plane() -> TripleSystem:
    """The 7-point Steiner triple system: lines x + y = z in GF(2)^3 minus origin."""
    triples = []
    for x in range(1, 8):
        for y in range(x + 1, 8):
            z = x ^ y
            if z > y:
                triples.append(frozenset((x, y, z)))
    return TripleSystem(7, triples)


def search_modified_sts(v: int, r: int, max_nodes: int = 5_000_000):
    """Exhaustive backtracking for a modified triple system on v points.

    Returns a TripleSystem, "UNSAT", or "UNKNOWN" on budget exhaustion.
    Triples are chosen in lexicographic order with pair-multiplicity pruning.
    """
    if v < 3 or r < 0:
        raise ValueError("need v >= 3 and r >= 0")
    pairs_total = comb(v, 2)
    if pairs_total % 3 != 0:
        return "UNSAT"  # |triples| = C(v,2)/3 must be integral
    target = pairs_total // 3
    if r > pairs_total:
        return "UNSAT"
    candidates = [tuple(c) for c in combinations(range(1, v + 1), 3)]
    pair_ids = {frozenset(p): i for i, p in enumerate(combinations(range(1, v + 1), 2))}
    cand_pairs = [tuple(pair_ids[frozenset(p)] for p in combinations(c, 2))
                  for c in candidates]
    mult = [0] * pairs_total
    chosen: list[int] = []
    nodes = 0

    def search(start: int, twos: int) -> Optional[str]:
        nonlocal nodes
        if len(chosen) == target:
            zeros = sum(1 for m in mult if m == 0)
            if zeros == r and twos == r:
                return "SAT"
            return None
        if len(candidates) - start < target - len(chosen):
            return None
        for ci in range(start, len(candidates)):
            nodes += 1
            if nodes > max_nodes:
                return "UNKNOWN"
            ps = cand_pairs[ci]
            if any(mult[p] >= 2 for p in ps):
                continue
            new_twos = twos + sum(1 for p in ps if mult[p] == 1)
            if new_twos > r:
                continue
            for p in ps:
                mult[p] += 1
            chosen.append(ci)
            res = search(ci + 1, new_twos)
            if res is not None:
                return res
            chosen.pop()
            for p in ps:
                mult[p] -= 1
        return None

    res = search(0, 0)
    if res == "SAT":
        return TripleSystem(v, [frozenset(candidates[ci]) for ci in chosen])
    if res == "UNKNOWN":
        return "UNKNOWN"
    return "UNSAT"


# -- file format --------------------------------------------------------------


def write_triples(ts: TripleSystem) -> str:
    lines = [HEADER, f"points {ts.v}"]
    for t in sorted(tuple(sorted(t)) for t in ts.triples):
        lines.append(" ".join(map(str, t)))
    return "\n".join(lines) + "\n"


def read_triples(text: str) -> TripleSystem:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != HEADER:
        raise ValueError("bad or missing header")
    if len(lines) < 2 or not lines[1].startswith("points "):
        raise ValueError("missing points line")
    v = int(lines[1].split()[1])
    triples = [frozenset(map(int, ln.split())) for ln in lines[2:]]
    return TripleSystem(v, triples)
