"""Forbidden-family hereditary classes, closure-violation search, and the
filtration/parallelogram pipeline over interval-labeled bases."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .decomposition import (
    D_LABEL,
    Labeling,
    find_full_directed_labeling,
    is_cyclically_indecomposable,
    linear_components,
    verify_decomposition,
)
from .digraph import DiGraph, GraphError, find_weak_embedding, induced_subgraph
from .helix import BudgetExceeded, HelixCover, build_helix_cover


@dataclass(frozen=True)
class ForbiddenFamily:
    """A finite list of graphs whose weakly embedded copies are forbidden."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        for m in members:
            if not isinstance(m, DiGraph):
                raise GraphError("family members must be graphs")
            if m.vertex_count < 1:
                raise GraphError("family members must have at least one vertex")


def _thread_cap() -> int:
    raw = os.environ.get("HELIXLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def in_class(g: DiGraph, family: ForbiddenFamily) -> bool:
    """True when no family member weakly embeds into ``g``."""
    members = family.members
    cap = _thread_cap()
    if cap > 1 and len(members) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            hits = list(pool.map(lambda m: find_weak_embedding(m, g), members))
        return all(h is None for h in hits)
    return all(find_weak_embedding(m, g) is None for m in members)


@dataclass(frozen=True)
class ClosureReport:
    """Per-candidate outcome of the closure-violation search."""

    status: str  # "violation" | "closed-at-budget" | "rejected"
    ell: Optional[int] = None
    reason: Optional[str] = None


def closure_violation_search(
    family: ForbiddenFamily,
    n: int,
    candidates: Sequence[Labeling],
    ell_max: int,
) -> tuple[ClosureReport, ...]:
    """For each labeled candidate outside the class, look for a cover length
    whose cover also leaves the class.

    A candidate whose covers all stay inside the class up to the budget is
    reported closed-at-budget: the base sits outside the class while every
    cover stays inside, so the class is not closed under these covers.
    """
    if ell_max < 1:
        raise GraphError("ell_max must be at least 1")
    reports = []
    for lab in candidates:
        if lab.n != n:
            reports.append(ClosureReport("rejected", reason=f"labeling has n={lab.n}, expected {n}"))
            continue
        if not verify_decomposition(lab).valid:
            reports.append(ClosureReport("rejected", reason="labeling is not a valid decomposition"))
            continue
        if in_class(lab.graph, family):
            reports.append(ClosureReport("rejected", reason="candidate graph already lies in the class"))
            continue
        status = "closed-at-budget"
        ell_found = None
        for ell in range(1, ell_max + 1):
            cover = build_helix_cover(lab, ell)
            if not in_class(cover.cover, family):
                status, ell_found = "violation", ell
                break
        reports.append(ClosureReport(status, ell=ell_found))
    return tuple(reports)


class FiltrationStuck(RuntimeError):
    """No admissible next vertex exists; the base was decomposable or D empty."""


@dataclass(frozen=True)
class Filtration:
    """A chain of vertex sets growing from D to the whole base, one pivot plus
    its chain predecessors (forward) or successors (reverse) at a time."""

    labeling: Labeling
    direction: str  # "forward" | "reverse"
    sets: tuple  # frozensets, sets[0] = D, sets[-1] = all vertices
    pivots: tuple

    @property
    def steps(self) -> int:
        return len(self.pivots)


def _chain_of(labeling: Labeling) -> dict[int, tuple[int, ...]]:
    """Map each non-D vertex to its linearly ordered chain inside its part."""
    chains: dict[int, tuple[int, ...]] = {}
    for part in labeling.parts:
        sub, kept = induced_subgraph(labeling.graph, part)
        comps = linear_components(sub)
        if comps is None:
            raise GraphError("labeling is not interval: a part is not a union of chains")
        for comp in comps:
            chain = tuple(kept[x] for x in comp)
            for v in chain:
                chains[v] = chain
    return chains


def build_filtration(labeling: Labeling, direction: str = "forward") -> Filtration:
    """Greedy chain construction: repeatedly take the least vertex outside the
    current set with an edge into it (forward) or from it (reverse), together
    with its chain predecessors (forward) or successors (reverse).

    Raises FiltrationStuck when no vertex qualifies before the base is
    exhausted, which signals a decomposable base or an empty D.
    """
    if direction not in ("forward", "reverse"):
        raise GraphError("direction must be 'forward' or 'reverse'")
    report = verify_decomposition(labeling)
    if not report.interval:
        raise GraphError("filtrations are defined over interval labelings")
    g = labeling.graph
    chains = _chain_of(labeling)
    current = set(labeling.d_vertices)
    sets = [frozenset(current)]
    pivots = []
    forward = direction == "forward"
    while len(current) < g.vertex_count:
        pivot = None
        for v in range(g.vertex_count):
            if v in current:
                continue
            touches = g.out_adj[v] if forward else g.in_adj[v]
            if any(w in current for w in touches):
                pivot = v
                break
        if pivot is None:
            raise FiltrationStuck(
                "no vertex outside the chain has an edge "
                + ("into" if forward else "from")
                + " it; the base is decomposable or D is empty"
            )
        chain = chains[pivot]
        if forward:
            drag = {v for v in chain if g.has_edge(v, pivot)}
        else:
            drag = {v for v in chain if g.has_edge(pivot, v)}
        current |= {pivot} | drag
        sets.append(frozenset(current))
        pivots.append(pivot)
    filt = Filtration(labeling, direction, tuple(sets), tuple(pivots))
    check_filtration(filt)
    return filt


def check_filtration(filt: Filtration) -> None:
    """Independent validator for the two step conditions; raises on failure."""
    labeling = filt.labeling
    g = labeling.graph
    chains = _chain_of(labeling)
    sets, pivots = filt.sets, filt.pivots
    forward = filt.direction == "forward"
    if sets[0] != frozenset(labeling.d_vertices):
        raise GraphError("filtration must start at D")
    if sets[-1] != frozenset(range(g.vertex_count)):
        raise GraphError("filtration must end at the full vertex set")
    if len(sets) != len(pivots) + 1:
        raise GraphError("filtration has mismatched sets and pivots")
    for i, pivot in enumerate(pivots):
        before, after = sets[i], sets[i + 1]
        if not before < after:
            raise GraphError("filtration sets must strictly grow")
        chain = chains[pivot]
        if forward:
            drag = {v for v in chain if g.has_edge(v, pivot)}
            reaches = any(g.has_edge(pivot, w) for w in before)
        else:
            drag = {v for v in chain if g.has_edge(pivot, v)}
            reaches = any(g.has_edge(w, pivot) for w in before)
        if after != before | {pivot} | drag:
            raise GraphError(f"step {i + 1} does not add the pivot with its chain segment")
        if not reaches:
            raise GraphError(f"pivot {pivot} has no edge anchoring it to the previous set")


@dataclass(frozen=True)
class Parallelogram:
    """Three column intervals of a long interval-helix cover: two filtration
    wedges of width ell1 around a full middle band of width ell2, plus D."""

    cover: HelixCover
    ell1: int
    ell2: int
    forward: Filtration
    reverse: Filtration
    g_a: frozenset
    g_b: frozenset
    g_c: frozenset
    subset: frozenset
    region: DiGraph
    region_vertices: tuple  # region index -> cover vertex


def _column_vertices(cover: HelixCover, column: int) -> list[int]:
    row = cover.block_table[column]
    return [x for block in row for x in block]


def build_parallelogram(
    labeling: Labeling,
    n_star: int,
    ell2: int,
    ga_formula: str = "mirrored",
    max_edges: Optional[int] = 5_000_000,
) -> Parallelogram:
    """Build the cover of length ell2 + 2*ell1 over an interval labeling of an
    indecomposable base and carve out the parallelogram subset.

    ``ga_formula`` selects how the leading wedge is indexed: "mirrored"
    (default) makes it the exact mirror image of the trailing wedge, so the
    wedges fill the leading and trailing column intervals; "verbatim" keeps an
    alternative indexing that skips one leading column and reaches into the
    middle band, exposed for comparison only.
    """
    if ga_formula not in ("mirrored", "verbatim"):
        raise GraphError("ga_formula must be 'mirrored' or 'verbatim'")
    if ell2 < 0:
        raise GraphError("ell2 must be non-negative")
    report = verify_decomposition(labeling)
    if not report.interval:
        raise GraphError("the parallelogram needs an interval labeling")
    base = labeling.graph
    if not labeling.d_vertices:
        raise GraphError("the parallelogram needs a nonempty D")
    if not is_cyclically_indecomposable(base, n_star):
        raise GraphError("the base must be cyclically indecomposable for n_star")

    ell1 = base.vertex_count - len(labeling.d_vertices)
    ell = ell2 + 2 * ell1
    if ell < 1:
        raise GraphError("degenerate base: no non-D vertices to stack")
    if max_edges is not None:
        _, predicted_edges = predicted_cover_size(labeling, ell)
        if predicted_edges > max_edges:
            raise BudgetExceeded(
                f"cover of length {ell} would have {predicted_edges} edges "
                f"(> {max_edges}); raise max_edges to force materialization"
            )
    hc = build_helix_cover(labeling, ell)
    fwd = build_filtration(labeling, "forward")
    rev = build_filtration(labeling, "reverse")
    s, t = fwd.steps, rev.steps
    proj = hc.projection.assignment

    g_c: set[int] = set()
    for i in range(1, s + 1):
        allowed = fwd.sets[i]
        g_c.update(x for x in _column_vertices(hc, ell - i) if proj[x] in allowed)
    for i in range(s + 1, ell1 + 1):
        g_c.update(_column_vertices(hc, ell - i))

    g_a: set[int] = set()
    for i in range(1, t + 1):
        allowed = rev.sets[i]
        g_a.update(x for x in _column_vertices(hc, i - 1) if proj[x] in allowed)
    if ga_formula == "mirrored":
        for i in range(t + 1, ell1 + 1):
            g_a.update(_column_vertices(hc, i - 1))
    else:
        for i in range(t + 1, ell1 + 1):
            g_a.update(_column_vertices(hc, i))

    g_b = {x for j in range(ell1, ell1 + ell2) for x in _column_vertices(hc, j)}
    d_cover = set(hc.d_cover_vertices)
    subset = frozenset(g_a | g_b | g_c | d_cover)
    region, region_vertices = induced_subgraph(hc.cover, subset)
    para = Parallelogram(
        cover=hc,
        ell1=ell1,
        ell2=ell2,
        forward=fwd,
        reverse=rev,
        g_a=frozenset(g_a),
        g_b=frozenset(g_b),
        g_c=frozenset(g_c),
        subset=subset,
        region=region,
        region_vertices=region_vertices,
    )
    if ga_formula == "mirrored":
        _check_parallelogram_shape(para)
    return para


def _check_parallelogram_shape(p: Parallelogram) -> None:
    """Well-formedness: wedges occupy exactly the leading and trailing column
    intervals, every column carries the filtration-prescribed subset, and the
    middle band is full."""
    hc = p.cover
    ell, ell1, ell2 = hc.length, p.ell1, p.ell2
    proj = hc.projection.assignment
    width = hc.base.vertex_count - len(hc.labeling.d_vertices)
    assert len(p.g_b) == ell2 * width, "middle band must be full"
    assert not (p.g_a & p.g_b) and not (p.g_b & p.g_c) and not (p.g_a & p.g_c), (
        "parallelogram pieces must be disjoint"
    )
    s, t = p.forward.steps, p.reverse.steps
    for j in range(ell):
        column = set(_column_vertices(hc, j))
        if j < ell1:
            i = j + 1
            want = p.reverse.sets[i] if i <= t else p.reverse.sets[-1]
            assert p.g_a & column == {x for x in column if proj[x] in want}, (
                f"leading wedge disagrees at column {j}"
            )
            assert not (p.g_c & column)
        elif j < ell1 + ell2:
            assert p.g_b >= column and not ((p.g_a | p.g_c) & column)
        else:
            i = ell - j
            want = p.forward.sets[i] if i <= s else p.forward.sets[-1]
            assert p.g_c & column == {x for x in column if proj[x] in want}, (
                f"trailing wedge disagrees at column {j}"
            )
            assert not (p.g_a & column)


@dataclass(frozen=True)
class ParallelogramVerdict:
    indecomposable: bool
    labeling: Optional[Labeling]  # witness on the region, when decomposable


def parallelogram_verdict(p: Parallelogram, n_star: int) -> ParallelogramVerdict:
    """Decide cyclic indecomposability of the carved-out region; on a
    decomposable region, also return the least witnessing labeling."""
    if is_cyclically_indecomposable(p.region, n_star):
        return ParallelogramVerdict(True, None)
    witness = find_full_directed_labeling(p.region, n_star, require_nonconstant=True)
    assert witness is not None
    return ParallelogramVerdict(False, witness)


def min_ell2_search(
    labeling: Labeling,
    n_star: int,
    ell2_max: int,
    ga_formula: str = "mirrored",
) -> Optional[tuple[int, Parallelogram]]:
    """Smallest middle-band width whose parallelogram region is indecomposable,
    or None when none of 0..ell2_max works."""
    for ell2 in range(ell2_max + 1):
        para = build_parallelogram(labeling, n_star, ell2, ga_formula=ga_formula)
        if parallelogram_verdict(para, n_star).indecomposable:
            return ell2, para
    return None


def pigeonhole_ell2(labeling: Labeling, n_star: int) -> int:
    """A middle-band width certified wide enough by the pigeonhole bound: one
    more than n_star ** |base|, an upper bound for the number of ways to
    distribute the base vertices over n_star parts."""
    return n_star ** labeling.graph.vertex_count + 1


def predicted_cover_size(labeling: Labeling, ell: int) -> tuple[int, int]:
    """Vertex and edge counts of the length-``ell`` cover, by pure arithmetic."""
    g = labeling.graph
    lab = labeling.assignment
    n = labeling.n
    d_count = len(labeling.d_vertices)
    width = g.vertex_count - d_count
    d_d = intra_or_d = cross = 0
    for u, v in g.edges:
        a, b = lab[u], lab[v]
        if a == D_LABEL and b == D_LABEL:
            d_d += 1
        elif a == D_LABEL or b == D_LABEL or a == b:
            intra_or_d += 1
        else:
            cross += 1
    vertices = ell * width + d_count
    edges = d_d + ell * intra_or_d + (ell * (ell - 1) // 2) * cross
    return vertices, edges
