"""Immutable directed graphs and the search primitives built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from heapq import heapify, heappop, heappush
from typing import Iterable, Iterator, Mapping, Optional


class GraphError(ValueError):
    """A graph value or an operation argument violates a structural invariant."""


def _canonical_labels(labels) -> tuple[tuple[int, str], ...]:
    if not labels:
        return ()
    items = labels.items() if isinstance(labels, Mapping) else tuple(labels)
    return tuple(sorted((int(i), str(s)) for i, s in items))


@dataclass(frozen=True)
class DiGraph:
    """A finite simple directed graph on vertices ``0 .. vertex_count - 1``.

    Antiparallel pairs (u, v) and (v, u) may coexist; self-loops are rejected.
    Instances are immutable values, safe to share between threads.
    """

    vertex_count: int
    edges: frozenset = frozenset()
    labels: tuple = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
        labels = _canonical_labels(self.labels)
        object.__setattr__(self, "labels", labels)
        seen = set()
        for i, _ in labels:
            if not 0 <= i < self.vertex_count:
                raise GraphError(f"label index {i} out of range")
            if i in seen:
                raise GraphError(f"duplicate label for vertex {i}")
            seen.add(i)

    def __repr__(self):
        return f"DiGraph({self.vertex_count}, {sorted(self.edges)!r})"

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
        return tuple(tuple(row) for row in adj)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in sorted(self.edges):
            adj[v].append(u)
        return tuple(tuple(row) for row in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    @cached_property
    def _label_map(self) -> dict[int, str]:
        return dict(self.labels)

    def label_of(self, v: int) -> Optional[str]:
        return self._label_map.get(v)


def graph_from_edges(n: int, pairs: Iterable[tuple[int, int]], labels=None) -> DiGraph:
    """Build a graph on ``n`` vertices from an edge list, deduplicating pairs."""
    return DiGraph(n, frozenset(tuple(p) for p in pairs), _canonical_labels(labels))


@dataclass(frozen=True)
class VertexMap:
    """A total map between the vertex sets of two graphs."""

    domain: DiGraph
    codomain: DiGraph
    assignment: tuple

    def __post_init__(self):
        assignment = tuple(int(x) for x in self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != self.domain.vertex_count:
            raise GraphError("assignment must cover every domain vertex")
        for x in assignment:
            if not 0 <= x < self.codomain.vertex_count:
                raise GraphError(f"image vertex {x} out of range")

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)


def identity_map(g: DiGraph) -> VertexMap:
    return VertexMap(g, g, tuple(range(g.vertex_count)))


def compose_maps(f: VertexMap, g: VertexMap) -> VertexMap:
    """Compose two vertex maps, applying ``f`` first and ``g`` second."""
    if f.codomain != g.domain:
        raise GraphError("codomain of the first map must be the domain of the second")
    return VertexMap(f.domain, g.codomain, tuple(g.assignment[x] for x in f.assignment))


@dataclass(frozen=True)
class CycleWitness:
    """A simple directed cycle recorded as its vertex sequence."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise GraphError("a directed cycle has at least 2 vertices")
        if len(set(vs)) != len(vs):
            raise GraphError("cycle vertices must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def canonical(self) -> "CycleWitness":
        """Rotate the sequence so it starts at its least vertex."""
        vs = self.vertices
        k = vs.index(min(vs))
        return CycleWitness(vs[k:] + vs[:k])

    def edge_pairs(self) -> Iterator[tuple[int, int]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def is_cycle_of(self, g: DiGraph) -> bool:
        return all(v < g.vertex_count for v in self.vertices) and all(
            g.has_edge(u, v) for u, v in self.edge_pairs()
        )

    def is_induced_in(self, g: DiGraph) -> bool:
        """True when the vertex set carries exactly the cycle edges and nothing else."""
        if not self.is_cycle_of(g):
            return False
        vs = set(self.vertices)
        present = {(u, v) for u, v in g.edges if u in vs and v in vs}
        return present == set(self.edge_pairs())

    def as_map(self, g: DiGraph) -> VertexMap:
        """The cycle viewed as a homomorphism from the standard cycle graph into ``g``."""
        m = len(self.vertices)
        cyc = DiGraph(m, frozenset((i, (i + 1) % m) for i in range(m)))
        return VertexMap(cyc, g, self.vertices)


def is_graph_homomorphism(f: VertexMap) -> bool:
    """Every domain edge must land on a codomain edge (which also forbids collapsing it)."""
    a = f.assignment
    cod = f.codomain.edges
    return all((a[u], a[v]) in cod for u, v in f.domain.edges)


def find_weak_embedding(a: DiGraph, b: DiGraph) -> Optional[VertexMap]:
    """Search for an injective map sending every edge of ``a`` onto an edge of ``b``.

    The codomain may carry extra edges; only forward preservation is required.
    Returns the lexicographically least assignment (by domain vertex, then image
    index), or None.  Backtracking with degree-based candidate pruning.
    """
    na, nb = a.vertex_count, b.vertex_count
    if na > nb:
        return None
    if na == 0:
        return VertexMap(a, b, ())
    a_out, a_in = a.out_adj, a.in_adj
    b_out_deg = [len(row) for row in b.out_adj]
    b_in_deg = [len(row) for row in b.in_adj]
    earlier_out = [[u for u in a_out[v] if u < v] for v in range(na)]
    earlier_in = [[u for u in a_in[v] if u < v] for v in range(na)]
    assign = [-1] * na
    used = [False] * nb
    b_edges = b.edges

    def feasible(v: int, w: int) -> bool:
        if b_out_deg[w] < len(a_out[v]) or b_in_deg[w] < len(a_in[v]):
            return False
        for u in earlier_out[v]:
            if (w, assign[u]) not in b_edges:
                return False
        for u in earlier_in[v]:
            if (assign[u], w) not in b_edges:
                return False
        return True

    def search(v: int) -> bool:
        if v == na:
            return True
        for w in range(nb):
            if not used[w] and feasible(v, w):
                assign[v] = w
                used[w] = True
                if search(v + 1):
                    return True
                used[w] = False
        assign[v] = -1
        return False

    if not search(0):
        return None
    return VertexMap(a, b, tuple(assign))


def girth(g: DiGraph, max_len: Optional[int] = None) -> Optional[tuple[int, CycleWitness]]:
    """Length and canonical witness of a shortest directed cycle, if one exists.

    The witness is the lexicographically least vertex sequence among minimal
    cycles; minimal cycles are always induced, which is asserted.
    """
    n = g.vertex_count
    bound = n if max_len is None else min(int(max_len), n)
    if bound < 2:
        return None
    best = None
    out = g.out_adj
    edges = g.edges
    for s in range(n):
        target = bound if best is None else best - 1
        if target < 2:
            break
        # BFS over out-edges; a path s -> u of length d plus the edge u -> s closes a
        # (d+1)-cycle, and the first such u popped gives the shortest cycle through s
        dist = [-1] * n
        dist[s] = 0
        frontier = deque([s])
        while frontier:
            u = frontier.popleft()
            d = dist[u]
            if d >= 1 and (u, s) in edges:
                best = d + 1
                break
            if d + 1 <= target - 1:
                for w in out[u]:
                    if dist[w] < 0:
                        dist[w] = d + 1
                        frontier.append(w)
    if best is None:
        return None
    witness = enumerate_cycles(g, best)[0]
    assert witness.is_induced_in(g), "a minimal-length cycle must be induced"
    return best, witness


def enumerate_cycles(g: DiGraph, exact_len: int) -> list[CycleWitness]:
    """All simple directed cycles of exactly the given length, canonically
    rotated to their least vertex, deduplicated, and sorted."""
    m = int(exact_len)
    if m < 2:
        raise GraphError("cycle length must be at least 2")
    n = g.vertex_count
    out = g.out_adj
    edges = g.edges
    found: list[tuple[int, ...]] = []
    on_path = [False] * n
    path: list[int] = []

    def extend(s: int, cur: int, depth: int) -> None:
        if depth == m:
            if (cur, s) in edges:
                found.append(tuple(path))
            return
        for w in out[cur]:
            if w > s and not on_path[w]:
                on_path[w] = True
                path.append(w)
                extend(s, w, depth + 1)
                path.pop()
                on_path[w] = False

    for s in range(n):
        on_path[s] = True
        path.append(s)
        extend(s, s, 1)
        path.pop()
        on_path[s] = False
    found.sort()
    return [CycleWitness(t) for t in found]


def topological_extension(g: DiGraph) -> Optional[VertexMap]:
    """Weakly embed a cycle-free graph into the transitive tournament on its
    vertex count, by topological sort; None when the graph has a cycle."""
    n = g.vertex_count
    indeg = [len(row) for row in g.in_adj]
    heap = [v for v in range(n) if indeg[v] == 0]
    heapify(heap)
    order = []
    while heap:
        v = heappop(heap)
        order.append(v)
        for w in g.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heappush(heap, w)
    if len(order) < n:
        return None
    rank = [0] * n
    for pos, v in enumerate(order):
        rank[v] = pos
    tournament = DiGraph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))
    return VertexMap(g, tournament, tuple(rank))


def induced_subgraph(g: DiGraph, vs: Iterable[int]) -> tuple[DiGraph, tuple[int, ...]]:
    """Induced subgraph on ``vs`` (re-indexed in sorted order) plus the kept-vertex list."""
    keep = sorted({int(v) for v in vs})
    for v in keep:
        if not 0 <= v < g.vertex_count:
            raise GraphError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    labels = tuple((index[v], s) for v, s in g.labels if v in index)
    return DiGraph(len(keep), edges, labels), tuple(keep)


def weak_components(g: DiGraph) -> list[list[int]]:
    """Weakly-connected components, each sorted, ordered by least member."""
    n = g.vertex_count
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.out_adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
            for w in g.in_adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps
