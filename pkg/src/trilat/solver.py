"""Exact K-colorability search, periodic-stripe solving, and DIMACS plumbing.

The internal solver is plain backtracking over a not-all-equal constraint
system (triangles become ternary constraints; in periodic stripes a triangle
whose vertices collide modulo the period degenerates to a binary disequality).
It uses forward checking, most-constrained-variable ordering, and the standard
color symmetry break: a value may only be one more than the largest color used
so far on the current branch.  UNSAT is reported only on exhausted search;
budget cutoffs yield UNKNOWN.

Instances beyond the internal solver's reach can be exported as DIMACS CNF and
handed to any SAT-competition-style solver via a subprocess command.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .coloring import Coloring, is_proper, stripe_span_bound
from .lattice import LatticePoint, PeriodicStripe, Region, StripeWindow, TriangleRegion
from .triangles import enumerate_triangles

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


@dataclass
class Budget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SolveStats:
    nodes: int = 0
    elapsed: float = 0.0
    budget_exhausted: bool = False


@dataclass
class SolveOutcome:
    status: str
    coloring: Optional[Coloring] = None
    stats: SolveStats = field(default_factory=SolveStats)


class _Csp:
    """Not-all-equal / not-equal constraint system over 0..nvars-1."""

    def __init__(self, nvars: int, ternary, binary):
        self.nvars = nvars
        self.ternary = [tuple(t) for t in ternary]
        self.binary = [tuple(b) for b in binary]
        # per variable: ternary constraints as (other1, other2), binary as other
        self.tri_of = [[] for _ in range(nvars)]
        self.bin_of = [[] for _ in range(nvars)]
        for (i, j, k) in self.ternary:
            self.tri_of[i].append((j, k))
            self.tri_of[j].append((i, k))
            self.tri_of[k].append((i, j))
        for (i, j) in self.binary:
            self.bin_of[i].append(j)
            self.bin_of[j].append(i)
        self.degree = [len(self.tri_of[v]) + len(self.bin_of[v]) for v in range(nvars)]


def _solve_csp(csp: _Csp, K: int, budget: Budget) -> tuple[str, Optional[list[int]], SolveStats]:
    n = csp.nvars
    stats = SolveStats()
    if n == 0:
        return (SAT, [], stats)
    full = (1 << K) - 1
    dom = [full] * n
    color = [-1] * n
    trail: list[list[tuple[int, int]]] = []  # per depth: (var, removed bits)
    order: list[int] = []  # assigned vars in order
    start = time.monotonic()
    deadline = start + budget.max_seconds if budget.max_seconds is not None else None

    def out_of_budget() -> bool:
        if budget.max_nodes is not None and stats.nodes >= budget.max_nodes:
            return True
        if deadline is not None and stats.nodes % 256 == 0 and time.monotonic() > deadline:
            return True
        return False

    def prune(v: int, c: int, removed: list[tuple[int, int]]) -> bool:
        bit = 1 << c
        if dom[v] & bit:
            dom[v] &= ~bit
            removed.append((v, bit))
            if dom[v] == 0 and color[v] < 0:
                return False
        return True

    def assign(v: int, c: int) -> bool:
        color[v] = c
        removed: list[tuple[int, int]] = []
        trail.append(removed)
        order.append(v)
        ok = True
        for u in csp.bin_of[v]:
            if color[u] == c:
                ok = False
                break
            if color[u] < 0 and not prune(u, c, removed):
                ok = False
                break
        if ok:
            for (u, w) in csp.tri_of[v]:
                cu, cw = color[u], color[w]
                if cu == c and cw == c:
                    ok = False
                    break
                if cu == c and cw < 0 and not prune(w, c, removed):
                    ok = False
                    break
                if cw == c and cu < 0 and not prune(u, c, removed):
                    ok = False
                    break
        return ok

    def unassign():
        v = order.pop()
        color[v] = -1
        for (u, bit) in trail.pop():
            dom[u] |= bit

    max_used_stack = [-1]

    def search() -> str:
        if len(order) == n:
            return SAT
        if out_of_budget():
            stats.budget_exhausted = True
            return UNKNOWN
        max_used = max_used_stack[-1]
        cap_mask = (1 << min(K, max_used + 2)) - 1
        best_v, best_size = -1, K + 2
        for v in range(n):
            if color[v] >= 0:
                continue
            size = bin(dom[v] & cap_mask).count("1")
            if size < best_size or (size == best_size and best_v >= 0
                                    and csp.degree[v] > csp.degree[best_v]):
                best_v, best_size = v, size
                if size == 0:
                    break
        v = best_v
        avail = dom[v] & cap_mask
        c = 0
        while avail >> c:
            if (avail >> c) & 1:
                stats.nodes += 1
                ok = assign(v, c)
                if ok:
                    max_used_stack.append(max(max_used, c))
                    res = search()
                    max_used_stack.pop()
                    if res == SAT:
                        return SAT  # keep the assignment intact
                    if res == UNKNOWN:
                        unassign()
                        return UNKNOWN
                unassign()
            c += 1
        return UNSAT

    status = search()
    stats.elapsed = time.monotonic() - start
    if status == SAT:
        return (status, list(color), stats)
    return (status, None, stats)


def _finite_csp(region: Region):
    pts = sorted(region.points(), key=lambda p: (p.b, p.a))
    index = {p: i for i, p in enumerate(pts)}
    ternary = [(index[t.p1], index[t.p2], index[t.p3]) for t in enumerate_triangles(region)]
    return pts, _Csp(len(pts), ternary, [])


def decide_k_colorable(region: Region, K: int, budget: Budget = Budget()) -> SolveOutcome:
    """Exact K-colorability of a finite region."""
    if K < 1:
        raise ValueError("K must be positive")
    if isinstance(region, PeriodicStripe):
        return solve_periodic_stripe(region.k, region.period, K, budget)
    pts, csp = _finite_csp(region)
    status, colors, stats = _solve_csp(csp, K, budget)
    if status == SAT:
        coloring = Coloring(region, {p: colors[i] for i, p in enumerate(pts)}, K)
        ok, witness = is_proper(coloring)
        if not ok:
            raise RuntimeError(f"solver produced improper coloring, witness {witness}")
        return SolveOutcome(SAT, coloring, stats)
    return SolveOutcome(status, None, stats)


def periodic_cell_constraints(k: int, period: int):
    """Constraints on fundamental-domain cells of the k-row period-p stripe.

    Returns (ternary, binary, contradiction): cell index = b * period + a.
    A window triangle whose vertices collapse to fewer distinct cells becomes a
    binary disequality, or a contradiction if all three collapse together.
    """
    span = stripe_span_bound(k)
    window = StripeWindow(k, 0, period - 1 + span)
    ternary: set[tuple] = set()
    binary: set[tuple] = set()
    contradiction = False
    for t in enumerate_triangles(window):
        cells = frozenset((p.b * period + p.a % period) for p in t.vertices())
        if len(cells) == 3:
            ternary.add(tuple(sorted(cells)))
        elif len(cells) == 2:
            binary.add(tuple(sorted(cells)))
        else:
            contradiction = True
    return sorted(ternary), sorted(binary), contradiction


def solve_periodic_stripe(k: int, period: int, K: int, budget: Budget = Budget()) -> SolveOutcome:
    """Existence of a period-p K-coloring of the k-row stripe; SAT payload is a base block."""
    ternary, binary, contradiction = periodic_cell_constraints(k, period)
    if contradiction:
        return SolveOutcome(UNSAT, None, SolveStats())
    csp = _Csp(k * period, ternary, binary)
    status, colors, stats = _solve_csp(csp, K, budget)
    if status == SAT:
        region = PeriodicStripe(k, period)
        assignment = {LatticePoint(a, b): colors[b * period + a]
                      for b in range(k) for a in range(period)}
        coloring = Coloring(region, assignment, K)
        ok, witness = is_proper(coloring)
        if not ok:
            raise RuntimeError(f"solver produced improper stripe coloring, witness {witness}")
        return SolveOutcome(SAT, coloring, stats)
    return SolveOutcome(status, None, stats)


@dataclass
class FResult:
    n: int
    lo: int  # smallest K not proven uncolorable
    hi: Optional[int]  # best proven upper bound (SAT or imported), None if unknown
    coloring: Optional[Coloring] = None

    @property
    def exact(self) -> Optional[int]:
        return self.lo if self.hi == self.lo else None


def compute_f(n: int, budget: Budget = Budget(),
              upper_bound: Optional[int] = None,
              upper_coloring: Optional[Coloring] = None,
              sat_cmd: Optional[str] = None) -> FResult:
    """Iterate K upward until SAT; exact when every smaller K was refuted.

    upper_bound/upper_coloring import an externally established bound (for
    instance from an explicit construction) used when the search hits its
    budget before a definite verdict.
    """
    region = TriangleRegion(n)
    hi = upper_bound
    K = 1
    while hi is None or K <= hi:
        if sat_cmd is not None:
            outcome = decide_k_colorable_external(region, K, sat_cmd)
        else:
            outcome = decide_k_colorable(region, K, budget)
        if outcome.status == SAT:
            return FResult(n, lo=K, hi=K, coloring=outcome.coloring)
        if outcome.status == UNKNOWN:
            return FResult(n, lo=K, hi=hi, coloring=upper_coloring)
        K += 1
    return FResult(n, lo=K, hi=hi, coloring=upper_coloring)


# -- DIMACS export / import ---------------------------------------------------


@dataclass
class CnfInstance:
    num_vars: int
    clauses: list[list[int]]
    points: list[LatticePoint]
    K: int
    region: Region

    def var(self, point_rank: int, color: int) -> int:
        return point_rank * self.K + color + 1

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for cl in self.clauses:
            lines.append(" ".join(map(str, cl)) + " 0")
        return "\n".join(lines) + "\n"


def export_dimacs(region: Region, K: int) -> CnfInstance:
    """At-least-one-color clause per point plus one forbid clause per (triangle, color).

    At-most-one clauses are omitted: projecting a model to each point's lowest
    true color yields a proper coloring, since a monochromatic triple in the
    projected colors would falsify that triangle's clause.
    """
    if isinstance(region, PeriodicStripe):
        pts = sorted(region.fundamental_domain(), key=lambda p: (p.b, p.a))
        index = {p: i for i, p in enumerate(pts)}
        ternary, binary, contradiction = periodic_cell_constraints(region.k, region.period)
        cell_rank = {b * region.period + a: index[LatticePoint(a, b)]
                     for b in range(region.k) for a in range(region.period)}
        groups = [tuple(cell_rank[c] for c in t) for t in ternary]
        pairs = [tuple(cell_rank[c] for c in bnd) for bnd in binary]
        if contradiction:
            # unsatisfiable instance: emit the empty clause
            inst = CnfInstance(len(pts) * K, [[]], pts, K, region)
            inst.clauses = [[1], [-1]] if pts else [[]]
            return inst
    else:
        pts = sorted(region.points(), key=lambda p: (p.b, p.a))
        index = {p: i for i, p in enumerate(pts)}
        groups = [tuple(index[p] for p in t.vertices()) for t in enumerate_triangles(region)]
        pairs = []
    inst = CnfInstance(len(pts) * K, [], pts, K, region)
    for rank in range(len(pts)):
        inst.clauses.append([inst.var(rank, c) for c in range(K)])
    for (i, j, k) in groups:
        for c in range(K):
            inst.clauses.append([-inst.var(i, c), -inst.var(j, c), -inst.var(k, c)])
    for (i, j) in pairs:
        for c in range(K):
            inst.clauses.append([-inst.var(i, c), -inst.var(j, c)])
    return inst


def import_assignment(cnf: CnfInstance, assignment_text: str) -> Coloring:
    """Project a DIMACS v-line model onto a coloring by lowest true color."""
    true_vars: set[int] = set()
    seen_any = False
    for line in assignment_text.splitlines():
        line = line.strip()
        if line.startswith("v") or line.startswith("V"):
            line = line[1:]
        elif not line or not (line[0].isdigit() or line[0] == "-"):
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                continue
            seen_any = True
            if lit > 0:
                true_vars.add(lit)
    if not seen_any:
        raise ValueError("incomplete/invalid assignment")
    assignment: dict[LatticePoint, int] = {}
    for rank, p in enumerate(cnf.points):
        chosen = None
        for c in range(cnf.K):
            if cnf.var(rank, c) in true_vars:
                chosen = c
                break
        if chosen is None:
            raise ValueError(f"incomplete/invalid assignment: no color for point {p}")
        assignment[p] = chosen
    coloring = Coloring(cnf.region, assignment, cnf.K)
    ok, witness = is_proper(coloring)
    if not ok:
        raise RuntimeError(f"imported coloring improper (encoder bug?), witness {witness}")
    return coloring


def run_sat_command(sat_cmd: str, dimacs_text: str, timeout: Optional[float] = None):
    """Run an external SAT solver on a DIMACS instance.

    Returns (status, model_text): status per the s-line, model_text the
    concatenated v-lines.  The command is invoked as `<sat_cmd> <cnf-file>`.
    """
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as f:
        f.write(dimacs_text)
        path = f.name
    try:
        proc = subprocess.run(shlex.split(sat_cmd) + [path],
                              capture_output=True, text=True, timeout=timeout)
    finally:
        Path(path).unlink(missing_ok=True)
    status = UNKNOWN
    model_lines = []
    for line in proc.stdout.splitlines():
        if line.startswith("s "):
            verdict = line[2:].strip().upper()
            if verdict.startswith("SAT"):
                status = SAT
            elif verdict.startswith("UNSAT"):
                status = UNSAT
        elif line.startswith("v ") or line.strip() == "v":
            model_lines.append(line)
    return status, "\n".join(model_lines)


def decide_k_colorable_external(region: Region, K: int, sat_cmd: str,
                                timeout: Optional[float] = None) -> SolveOutcome:
    cnf = export_dimacs(region, K)
    status, model = run_sat_command(sat_cmd, cnf.to_dimacs(), timeout)
    if status == SAT:
        return SolveOutcome(SAT, import_assignment(cnf, model), SolveStats())
    return SolveOutcome(status, None, SolveStats())


# -- incomplete search for upper-bound colorings ------------------------------


def local_search_coloring(region: Region, K: int, seed: int = 0,
                          max_steps: int = 2_000_000,
                          restarts: int = 20) -> Optional[Coloring]:
    """Min-conflicts search for a proper K-coloring; incomplete but fast.

    Only ever returns checker-verified colorings, so a hit is a valid upper
    bound regardless of the heuristic nature of the search.
    """
    import random

    rng = random.Random(seed)
    if isinstance(region, PeriodicStripe):
        pts = sorted(region.fundamental_domain(), key=lambda p: (p.b, p.a))
        index = {p: i for i, p in enumerate(pts)}
        ternary, binary, contradiction = periodic_cell_constraints(region.k, region.period)
        if contradiction:
            return None
        cell_rank = {b * region.period + a: index[LatticePoint(a, b)]
                     for b in range(region.k) for a in range(region.period)}
        groups = [tuple(cell_rank[c] for c in t) for t in ternary]
        groups += [(i, j, j) for (i, j) in (tuple(cell_rank[c] for c in bnd) for bnd in binary)]
    else:
        pts = sorted(region.points(), key=lambda p: (p.b, p.a))
        index = {p: i for i, p in enumerate(pts)}
        groups = [tuple(index[p] for p in t.vertices()) for t in enumerate_triangles(region)]
    n = len(pts)
    pair_of = [[] for _ in range(n)]   # (other1, other2) per containing group
    groups_of = [[] for _ in range(n)]  # group ids per variable
    for gi, (i, j, k) in enumerate(groups):
        for v in {i, j, k}:
            others = [x for x in (i, j, k) if x != v]
            while len(others) < 2:
                others.append(others[0])
            pair_of[v].append(tuple(others))
            groups_of[v].append(gi)

    def violations(colors, v, c):
        cnt = 0
        for (u, w) in pair_of[v]:
            if colors[u] == c and colors[w] == c:
                cnt += 1
        return cnt

    for _ in range(max(1, restarts)):
        colors = [rng.randrange(K) for _ in range(n)]
        bad = {gi for gi, (i, j, k) in enumerate(groups)
               if colors[i] == colors[j] == colors[k]}
        steps = 0
        while bad and steps < max_steps // max(1, restarts):
            steps += 1
            gi = rng.choice(tuple(bad))
            v = rng.choice(groups[gi])
            scores = [(violations(colors, v, c), rng.random(), c) for c in range(K)]
            scores.sort()
            colors[v] = scores[0][2]
            for g in groups_of[v]:
                x, y, z = groups[g]
                if colors[x] == colors[y] == colors[z]:
                    bad.add(g)
                else:
                    bad.discard(g)
        if not bad:
            assignment = {p: colors[index[p]] for p in pts}
            coloring = Coloring(region, assignment, K)
            ok, _ = is_proper(coloring)
            if ok:
                return coloring
    return None
