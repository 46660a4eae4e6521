"""Helix covers of a labeled graph, lifted-cycle search, and the
cycle-removal machinery built on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Union

from .decomposition import D_LABEL, Labeling, verify_decomposition
from .digraph import (
    CycleWitness,
    DiGraph,
    GraphError,
    VertexMap,
    compose_maps,
    enumerate_cycles,
    girth,
    identity_map,
    is_graph_homomorphism,
)


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching its goal."""


@dataclass(frozen=True)
class HelixCover:
    """``length`` stacked copies of the non-D parts of a labeled base graph.

    Copies of part i live in every column j < length; edges inside a block and
    between a block and D mirror the base, while edges between parts i and
    i+1 (mod n) are replicated for every column pair j < j', with the part-i
    endpoint in the lower column.  The projection collapses columns back onto
    the base and is always a graph homomorphism.
    """

    labeling: Labeling
    length: int
    cover: DiGraph
    projection: VertexMap
    column_of: tuple
    part_of: tuple
    block_table: tuple  # [column][part] -> cover vertex tuple, in base order

    @property
    def base(self) -> DiGraph:
        return self.labeling.graph

    @cached_property
    def d_cover_vertices(self) -> tuple[int, ...]:
        return tuple(
            x for x in range(self.cover.vertex_count) if self.column_of[x] == D_LABEL
        )

    def block(self, column: int, part: int) -> tuple[int, ...]:
        return self.block_table[column][part]


def build_helix_cover(l: Labeling, length: int) -> HelixCover:
    """Materialize the length-``length`` cover of a valid labeling.

    Vertex numbering is fixed for reproducibility: D copies first in base
    order, then blocks by (column, part, base order within the part).
    """
    if length < 1:
        raise GraphError("cover length must be at least 1")
    report = verify_decomposition(l)
    if not report.valid:
        raise GraphError(f"labeling is not a valid cyclic decomposition: {report.violation}")

    base = l.graph
    n = l.n
    parts = l.parts
    d_vertices = l.d_vertices

    to_base: list[int] = []
    column_of: list[int] = []
    part_of: list[int] = []
    d_pos: dict[int, int] = {}
    for v in d_vertices:
        d_pos[v] = len(to_base)
        to_base.append(v)
        column_of.append(D_LABEL)
        part_of.append(D_LABEL)
    block_table: list[list[tuple[int, ...]]] = []
    block_pos: list[list[dict[int, int]]] = []
    for j in range(length):
        row: list[tuple[int, ...]] = []
        row_pos: list[dict[int, int]] = []
        for i in range(n):
            ids = []
            pos = {}
            for v in parts[i]:
                pos[v] = len(to_base)
                ids.append(len(to_base))
                to_base.append(v)
                column_of.append(j)
                part_of.append(i)
            row.append(tuple(ids))
            row_pos.append(pos)
        block_table.append(row)
        block_pos.append(row_pos)

    label_of = l.assignment
    d_d = []
    intra: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # inside part i
    with_d: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]  # (u, v, u_in_part)
    cross: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]  # between i and i+1
    for u, v in base.edges:
        a, b = label_of[u], label_of[v]
        if a == D_LABEL and b == D_LABEL:
            d_d.append((u, v))
        elif a == D_LABEL:
            with_d[b].append((u, v, False))
        elif b == D_LABEL:
            with_d[a].append((u, v, True))
        elif a == b:
            intra[a].append((u, v))
        elif (b - a) % n == 1:
            cross[a].append((u, v, True))  # runs from part a into part a+1
        else:  # (a - b) % n == 1, guaranteed by validity
            cross[b].append((u, v, False))  # runs from part b+1 back into part b

    edges = set()
    for u, v in d_d:
        edges.add((d_pos[u], d_pos[v]))
    for j in range(length):
        for i in range(n):
            pos = block_pos[j][i]
            for u, v in intra[i]:
                edges.add((pos[u], pos[v]))
            for u, v, u_in_part in with_d[i]:
                if u_in_part:
                    edges.add((pos[u], d_pos[v]))
                else:
                    edges.add((d_pos[u], pos[v]))
    for i in range(n):
        nxt = (i + 1) % n
        if not cross[i]:
            continue
        for j in range(length):
            for jp in range(j + 1, length):
                lo = block_pos[j][i]
                hi = block_pos[jp][nxt]
                for u, v, forward in cross[i]:
                    if forward:
                        edges.add((lo[u], hi[v]))
                    else:
                        edges.add((hi[u], lo[v]))

    cover = DiGraph(len(to_base), frozenset(edges))
    expected = length * (base.vertex_count - len(d_vertices)) + len(d_vertices)
    assert cover.vertex_count == expected, "cover size formula violated"
    projection = VertexMap(cover, base, tuple(to_base))
    assert is_graph_homomorphism(projection), "cover projection must be a homomorphism"
    return HelixCover(
        labeling=l,
        length=length,
        cover=cover,
        projection=projection,
        column_of=tuple(column_of),
        part_of=tuple(part_of),
        block_table=tuple(tuple(row) for row in block_table),
    )


#: Classification names, weakest to strongest.
COVER_CLASSES = ("general", "directed", "interval", "anticlique")


def classify_cover(c: HelixCover) -> str:
    """Strongest variant of the generating labeling: anticlique, interval,
    directed, or general."""
    report = verify_decomposition(c.labeling)
    if report.anticlique:
        return "anticlique"
    if report.interval:
        return "interval"
    if report.directed:
        return "directed"
    return "general"


def fiber_labeling(g: VertexMap, gamma: CycleWitness) -> Labeling:
    """Label each vertex of the domain of ``g`` by the position of its image on
    ``gamma``; everything mapping off the cycle goes to D.

    ``g`` must be a homomorphism and ``gamma`` an induced cycle of length >= 3
    in its codomain; the result is then a valid directed decomposition, which
    is asserted.
    """
    if not is_graph_homomorphism(g):
        raise GraphError("the map is not a graph homomorphism")
    if len(gamma) < 3:
        raise GraphError("the generating cycle must have length at least 3")
    if not gamma.is_induced_in(g.codomain):
        raise GraphError("the generating cycle must be induced in the codomain")
    position = {v: i for i, v in enumerate(gamma.vertices)}
    assignment = tuple(
        position.get(image, D_LABEL) for image in g.assignment
    )
    lab = Labeling(g.domain, len(gamma), assignment)
    report = verify_decomposition(lab)
    assert report.valid and report.directed, "fibers of an induced cycle decompose"
    return lab


def lift_cycle_exists(f: VertexMap, gamma: CycleWitness) -> Optional[CycleWitness]:
    """Least simple cycle in the domain of ``f`` whose image, suitably rotated,
    traverses ``gamma``; None when no such lift exists."""
    k = len(gamma)
    position = {v: i for i, v in enumerate(gamma.vertices)}
    dom = f.domain
    out = dom.out_adj
    img = f.assignment
    path: list[int] = []

    def extend(start: int, cur: int, want: int, depth: int) -> bool:
        # want: index into gamma that the next path vertex must project onto
        if depth == k:
            return dom.has_edge(cur, start)
        target = gamma.vertices[want]
        for w in out[cur]:
            if w > start and w not in path and img[w] == target:
                path.append(w)
                if extend(start, w, (want + 1) % k, depth + 1):
                    return True
                path.pop()
        return False

    for v in range(dom.vertex_count):
        a = position.get(img[v])
        if a is None:
            continue
        path = [v]
        if extend(v, v, (a + 1) % k, 1):
            return CycleWitness(tuple(path))
    return None


MembershipOracle = Callable[[DiGraph], bool]


def cycle_removal_step(
    membership: MembershipOracle,
    g: VertexMap,
    gamma: CycleWitness,
    ell_max: int,
) -> tuple[HelixCover, VertexMap, int]:
    """Cover the domain of ``g`` over the fibers of ``gamma`` with increasing
    length until the cover leaves the class, then return it with the composed
    map; the lift of ``gamma`` through that map is gone, which is asserted.

    Raises BudgetExceeded when every length up to ``ell_max`` stays inside the
    class: either the budget is too small or the class is closed under these
    covers.
    """
    if ell_max < 1:
        raise GraphError("ell_max must be at least 1")
    if membership(g.domain):
        raise GraphError("the domain already belongs to the class; nothing to remove")
    lab = fiber_labeling(g, gamma)
    for ell in range(1, ell_max + 1):
        hc = build_helix_cover(lab, ell)
        if not membership(hc.cover):
            composed = compose_maps(hc.projection, g)
            assert lift_cycle_exists(composed, gamma) is None, (
                "the cover construction must kill every lift of the generating cycle"
            )
            return hc, composed, ell
    raise BudgetExceeded(
        f"every cover up to length {ell_max} stayed inside the class; "
        "either raise the budget or the class is closed under these covers"
    )


def raise_girth(
    family,
    start: DiGraph,
    target: int,
    ell_max: int = 8,
    max_rounds: int = 16,
) -> DiGraph:
    """Repeatedly remove all minimal-length cycles from a graph outside the
    class until its shortest cycle reaches ``target`` (or it has none).

    ``family`` may be a ForbiddenFamily or a membership predicate.  Each round
    enumerates the minimal cycles and kills their lifts one by one; earlier
    kills persist under composition, which is asserted.  Raises BudgetExceeded
    when a removal step or the round budget runs out.
    """
    oracle = _as_oracle(family)
    if oracle(start):
        raise GraphError("the starting graph already belongs to the class")
    current = start
    for _ in range(max_rounds):
        found = girth(current)
        if found is None or found[0] >= target:
            return current
        m = found[0]
        minimal = enumerate_cycles(current, m)
        chain = identity_map(current)
        killed: list[CycleWitness] = []
        for gam in minimal:
            if lift_cycle_exists(chain, gam) is None:
                killed.append(gam)
                continue
            _, chain, _ = cycle_removal_step(oracle, chain, gam, ell_max)
            killed.append(gam)
            for earlier in killed:
                assert lift_cycle_exists(chain, earlier) is None, (
                    "a previously removed cycle reappeared"
                )
        current = chain.domain
        after = girth(current)
        assert after is None or after[0] > m, "a removal round must raise the girth"
    found = girth(current)
    if found is None or found[0] >= target:
        return current
    raise BudgetExceeded(f"girth still {found[0]} after {max_rounds} rounds")


def _as_oracle(family) -> MembershipOracle:
    if callable(family):
        return family
    from .hereditary import in_class  # local import to avoid a module cycle

    return lambda g: in_class(g, family)
