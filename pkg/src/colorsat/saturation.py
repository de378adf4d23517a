"""Saturation checks, deficiency, and greedy completion."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable

from . import kernels
from .family import (
    ForbiddenFamily,
    HostTooLargeError,
    copies_through,
    creates_member_on_add,
    family_member_edge_has_rainbow_path,
    find_member,
    rainbow_two_path_exists,
)
from .graph import EdgeColoredGraph

DEFAULT_WITNESS_CAP = 100


class InfeasibleFamilyError(ValueError):
    """The palette is too small for any member of the family to exist."""


class NotFreeError(ValueError):
    pass


class NotSaturatedError(ValueError):
    pass


@dataclass
class SaturationReport:
    family: str
    n: int
    t: int
    edge_count: int
    is_free: bool
    deficiency: int
    deficiency_witnesses: list = field(default_factory=list)
    member: dict | None = None

    @property
    def is_saturated(self) -> bool:
        return self.is_free and self.deficiency == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["deficiency_witnesses"] = [list(w) for w in self.deficiency_witnesses]
        if self.member is not None:
            d["member"] = {str(k): v for k, v in sorted(self.member.items())}
        d["is_saturated"] = self.is_saturated
        return d


def check_palette(g: EdgeColoredGraph, fam: ForbiddenFamily) -> None:
    if g.t < fam.colors:
        raise InfeasibleFamilyError(f"{fam.name} needs {fam.colors} colors but the palette has t = {g.t}")


def _deficient_pairs(g: EdgeColoredGraph, fam: ForbiddenFamily, limit: int, stop_early: bool):
    if fam.is_triangle:
        return kernels.tri_scan(g.n, g.matrix, g.t, fam.colors, limit, stop_early)
    count = 0
    witnesses = []
    for u, v in g.non_edges():
        for c in range(1, g.t + 1):
            if not creates_member_on_add(g, u, v, c, fam):
                count += 1
                if len(witnesses) < limit:
                    witnesses.append((u, v, c))
                if stop_early:
                    return count, witnesses
    return count, witnesses


def saturation_report(g: EdgeColoredGraph, fam: ForbiddenFamily, witness_cap: int = DEFAULT_WITNESS_CAP) -> SaturationReport:
    check_palette(g, fam)
    member = find_member(g, fam)
    deficiency, witnesses = _deficient_pairs(g, fam, witness_cap, False)
    return SaturationReport(fam.name, g.n, g.t, g.num_edges, member is None, deficiency, witnesses, member)


def is_saturated(g: EdgeColoredGraph, fam: ForbiddenFamily) -> bool:
    check_palette(g, fam)
    if find_member(g, fam) is not None:
        return False
    deficiency, _ = _deficient_pairs(g, fam, 0, True)
    return deficiency == 0


def default_order(g: EdgeColoredGraph) -> Iterable[tuple[int, int, int]]:
    for u, v in combinations(range(g.n), 2):
        for c in range(1, g.t + 1):
            yield u, v, c


def greedy_saturate(g: EdgeColoredGraph, fam: ForbiddenFamily, order: Iterable | None = None) -> EdgeColoredGraph:
    """Add ``(u, v, c)`` triples in ``order`` whenever the graph stays free.

    One pass suffices: a rejected triple created a member at the time, and
    it still does after further additions.
    """
    check_palette(g, fam)
    if find_member(g, fam) is not None:
        raise NotFreeError(f"input graph already contains a member of {fam.name}")
    for u, v, c in default_order(g) if order is None else order:
        if g.has_edge(u, v):
            continue
        if not creates_member_on_add(g, u, v, c, fam):
            g = g.add_edge(u, v, c)
    return g


# -- structural diagnostics -----------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Diagnostics:
    family: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {"family": self.family, "ok": self.ok, "checks": [asdict(c) for c in self.checks]}


def _common(g: EdgeColoredGraph, u: int, v: int) -> int:
    return (g.neighbor_mask(u) & g.neighbor_mask(v)).bit_count()


def verify_min_degree_bounds(g: EdgeColoredGraph, fam: ForbiddenFamily) -> Diagnostics:
    """Check the structural inequalities every saturated graph must meet.

    A failed check means a bug somewhere, not a counterexample.
    """
    if not is_saturated(g, fam):
        raise NotSaturatedError(f"graph is not saturated for {fam.name}")
    diag = Diagnostics(fam.name)
    t = g.t
    n = g.n
    non_edges = list(g.non_edges())
    degs = g.degrees()

    bad = [(u, v) for u, v in non_edges if not copies_through(g, fam.host, u, v, limit=1)]
    diag.checks.append(Check("non-edge lies in a host copy", not bad, f"violations: {bad[:5]}" if bad else ""))

    if fam.is_triangle and fam.colors == 2:
        need = 1 if t == 2 else 2
        low = [(u, v) for u, v in non_edges if _common(g, u, v) < need]
        diag.checks.append(Check(f"non-edge has >= {need} paths of length 2", not low,
                                 f"violations: {low[:5]}" if low else ""))
        if t >= 3 and n >= 3:
            delta = min(degs)
            diag.checks.append(Check("minimum degree >= 2", delta >= 2, f"min degree {delta}"))

    s = fam.star_size
    if s == 3 and fam.colors == 1:
        viol = []
        for u, v in non_edges:
            if degs[u] < 2 * (t - degs[v] // 2) or degs[v] < 2 * (t - degs[u] // 2):
                viol.append((u, v))
        diag.checks.append(Check("d(u) >= 2(t - floor(d(v)/2)) on non-edges", not viol,
                                 f"violations: {viol[:5]}" if viol else ""))
        if n >= 2 * t >= 6:
            ok = 2 * g.num_edges >= t * n
            diag.checks.append(Check("e(G) >= tn/2", ok, f"e={g.num_edges}, tn/2={t * n / 2}"))
    elif s is not None and non_edges:
        low = min(max(degs[u], degs[v]) for u, v in non_edges)
        diag.checks.append(Check(f"non-edge has an endpoint of degree >= {s - 1}", low >= s - 1,
                                 f"min over non-edges of max endpoint degree = {low}"))

    try:
        rainbow_paths = family_member_edge_has_rainbow_path(fam)
    except HostTooLargeError:
        rainbow_paths = False
    if rainbow_paths:
        miss = [(u, v) for u, v in non_edges if not rainbow_two_path_exists(g, u, v)]
        diag.checks.append(Check("non-edge has a rainbow 2-path", not miss,
                                 f"violations: {miss[:5]}" if miss else ""))
    return diag
