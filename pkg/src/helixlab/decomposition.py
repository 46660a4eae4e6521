"""Cyclic part-labelings of a directed graph: verification, classification,
and the constraint search deciding cyclic indecomposability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .digraph import DiGraph, GraphError, induced_subgraph, weak_components

#: Sentinel label for vertices assigned to the leftover set D rather than a part.
D_LABEL = -1


@dataclass(frozen=True)
class Labeling:
    """A total assignment of vertices to one of ``n`` cyclic parts or to D.

    A labeling is *valid* when every edge joins vertices of the same part,
    cyclically adjacent parts, or touches D; see :func:`verify_decomposition`.
    """

    graph: DiGraph
    n: int
    assignment: tuple

    def __post_init__(self):
        if self.n < 3:
            raise GraphError("a cyclic decomposition needs at least 3 parts")
        assignment = tuple(int(x) for x in self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != self.graph.vertex_count:
            raise GraphError("labeling must be total")
        for x in assignment:
            if x != D_LABEL and not 0 <= x < self.n:
                raise GraphError(f"label {x} out of range for n={self.n}")

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for v, x in enumerate(self.assignment):
            if x != D_LABEL:
                rows[x].append(v)
        return tuple(tuple(row) for row in rows)

    @cached_property
    def d_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, x in enumerate(self.assignment) if x == D_LABEL)

    @property
    def nonempty_parts(self) -> int:
        return sum(1 for p in self.parts if p)

    @property
    def is_full(self) -> bool:
        return not self.d_vertices


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of verifying a labeling, ordered strongest-last:
    anticlique implies interval implies directed implies valid."""

    valid: bool
    full: bool
    directed: bool
    interval: bool
    anticlique: bool
    nonempty_parts: int
    violation: Optional[tuple]  # ((u, v), reason) for the first failed level


def linear_components(g: DiGraph) -> Optional[list[list[int]]]:
    """Split ``g`` into weak components if every component is linearly ordered
    by the edge relation (a transitive tournament); None otherwise.

    Components come back in their linear order, sorted by least member.
    """
    out = []
    for comp in weak_components(g):
        order = _chain_order(g, comp)
        if order is None:
            return None
        out.append(order)
    return out


def _chain_order(g: DiGraph, comp: list[int]) -> Optional[list[int]]:
    # a transitive tournament on m vertices has pairwise distinct out-degrees m-1 .. 0
    members = set(comp)
    deg = {v: sum(1 for w in g.out_adj[v] if w in members) for v in comp}
    order = sorted(comp, key=lambda v: (-deg[v], v))
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if not g.has_edge(order[i], order[j]) or g.has_edge(order[j], order[i]):
                return None
    return order


def _interval_counterexample(g: DiGraph, sub: DiGraph, kept: tuple[int, ...]):
    """A concrete vertex pair showing the part is not a union of chains."""
    for comp in weak_components(sub):
        members = set(comp)
        for x, y in combinations(comp, 2):
            fwd, bwd = sub.has_edge(x, y), sub.has_edge(y, x)
            if fwd and bwd:
                return (kept[x], kept[y])
            if not fwd and not bwd:
                return (kept[x], kept[y])
        # tournament but possibly cyclic; expose a back edge of some 3-cycle
        for x, y, z in combinations(comp, 3):
            triple, _ = induced_subgraph(sub, (x, y, z))
            if _chain_order(triple, [0, 1, 2]) is None:
                return (kept[x], kept[z])
    return None


def verify_decomposition(l: Labeling) -> DecompositionReport:
    """Check the edge condition, then classify the labeling by its strongest
    variant, recording a counterexample for the first level that fails."""
    g, n, lab = l.graph, l.n, l.assignment
    edges = sorted(g.edges)
    violation = None

    valid = True
    for u, v in edges:
        a, b = lab[u], lab[v]
        if a == D_LABEL or b == D_LABEL:
            continue
        if (b - a) % n not in (0, 1, n - 1):
            valid = False
            violation = ((u, v), "edge endpoints lie in non-adjacent parts")
            break

    directed = valid
    if valid:
        for u, v in edges:
            a, b = lab[u], lab[v]
            if a == D_LABEL or b == D_LABEL:
                continue
            if (b - a) % n == n - 1:
                directed = False
                violation = ((u, v), "edge runs against the cyclic direction")
                break

    interval = directed
    if directed:
        for i, part in enumerate(l.parts):
            sub, kept = induced_subgraph(g, part)
            if linear_components(sub) is None:
                interval = False
                pair = _interval_counterexample(g, sub, kept)
                violation = (pair, f"part {i} is not a disjoint union of linear orders")
                break

    anticlique = directed
    if directed:
        for i, part in enumerate(l.parts):
            members = set(part)
            inner = next(((u, v) for u, v in edges if u in members and v in members), None)
            if inner is not None:
                anticlique = False
                if interval and violation is None:
                    violation = (inner, f"part {i} contains an edge")
                break

    return DecompositionReport(
        valid=valid,
        full=l.is_full,
        directed=directed,
        interval=interval,
        anticlique=anticlique,
        nonempty_parts=l.nonempty_parts,
        violation=violation,
    )


# --- the labeling constraint search -----------------------------------------
#
# A full directed cyclic n-decomposition of g is exactly a map f: V -> Z_n with
# f(v) - f(u) in {0, 1} (mod n) across every edge (u, v).  Domains are bitmasks
# over Z_n; propagation is arc consistency over those difference constraints.


def _bits(mask: int) -> list[int]:
    return [1 << i for i in range(mask.bit_length()) if (mask >> i) & 1]


def _forced_constant(dom: list[int]) -> bool:
    acc = 0
    for m in dom:
        acc |= m
        if acc & (acc - 1):
            return False
    return True


def _propagate(g: DiGraph, n: int, dom: list[int], trail: list, queue: deque) -> bool:
    full = (1 << n) - 1
    out_adj, in_adj = g.out_adj, g.in_adj
    while queue:
        u = queue.popleft()
        du = dom[u]
        up = du | (((du << 1) | (du >> (n - 1))) & full)
        down = du | (((du >> 1) | ((du & 1) << (n - 1))) & full)
        for w in out_adj[u]:
            nd = dom[w] & up
            if nd != dom[w]:
                if not nd:
                    return False
                trail.append((w, dom[w]))
                dom[w] = nd
                queue.append(w)
        for w in in_adj[u]:
            nd = dom[w] & down
            if nd != dom[w]:
                if not nd:
                    return False
                trail.append((w, dom[w]))
                dom[w] = nd
                queue.append(w)
    return True


def _solve(
    g: DiGraph,
    n: int,
    order: tuple[int, ...],
    dom: list[int],
    need_nonconstant: bool,
) -> Optional[tuple[int, ...]]:
    """First labeling found with values tried in ascending order per vertex of
    ``order``; with the natural vertex order that is the lexicographic least."""
    trail: list[tuple[int, int]] = []
    if not _propagate(g, n, dom, trail, deque(range(g.vertex_count))):
        return None
    if need_nonconstant and _forced_constant(dom):
        return None

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for bit in _bits(dom[v]):
            mark = len(trail)
            trail.append((v, dom[v]))
            dom[v] = bit
            ok = _propagate(g, n, dom, trail, deque([v]))
            if ok and need_nonconstant and _forced_constant(dom):
                ok = False
            if ok and rec(pos + 1):
                return True
            while len(trail) > mark:
                w, old = trail.pop()
                dom[w] = old
        return False

    if not rec(0):
        return None
    return tuple(m.bit_length() - 1 for m in dom)


def _bfs_order(g: DiGraph) -> tuple[int, ...]:
    order = []
    for comp in weak_components(g):
        seen = {comp[0]}
        dq = deque([comp[0]])
        while dq:
            u = dq.popleft()
            order.append(u)
            for w in sorted(set(g.out_adj[u]) | set(g.in_adj[u])):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
    return tuple(order)


def _has_nonconstant_labeling(g: DiGraph, n: int) -> bool:
    comps = weak_components(g)
    if len(comps) > 1:
        # constant on each component, with two different constants, always works
        return True
    order = _bfs_order(g)
    full = (1 << n) - 1
    dom = [full] * g.vertex_count
    dom[order[0]] = 1  # rotation freedom: pin the root to label 0
    return _solve(g, n, order, dom, True) is not None


def find_full_directed_labeling(
    g: DiGraph, n: int, require_nonconstant: bool = True
) -> Optional[Labeling]:
    """Lexicographically least f: V -> Z_n with f(v) - f(u) in {0, 1} (mod n)
    across every edge, non-constant when requested; None when no such f exists.

    Without the non-constancy requirement the constant-zero labeling always
    works and is returned.
    """
    if n < 3:
        raise GraphError("n must be at least 3")
    if require_nonconstant and g.vertex_count < 2:
        raise GraphError("a non-constant labeling needs at least 2 vertices")
    full = (1 << n) - 1
    dom = [full] * g.vertex_count
    sol = _solve(g, n, tuple(range(g.vertex_count)), dom, require_nonconstant)
    if sol is None:
        return None
    lab = Labeling(g, n, sol)
    if n >= 4:
        _assert_chord_properties(lab)
    return lab


def _assert_chord_properties(lab: Labeling) -> None:
    # along any path a -> b -> c, equal endpoint labels force the middle label;
    # along a -> b -> c -> d with n >= 4, equal outer labels force both middles
    g, f = lab.graph, lab.assignment
    out = g.out_adj
    for a in range(g.vertex_count):
        for b in out[a]:
            for c in out[b]:
                if f[a] == f[c]:
                    assert f[b] == f[a], "two-step chord property violated"
                for d in out[c]:
                    if f[a] == f[d]:
                        assert f[b] == f[a] and f[c] == f[a], (
                            "three-step chord property violated"
                        )


def is_cyclically_indecomposable(g: DiGraph, n: int) -> bool:
    """True when the only f with f(v) - f(u) in {0, 1} (mod n) on every edge is
    constant, i.e. no full directed cyclic decomposition uses two parts."""
    if g.vertex_count < 2:
        raise GraphError("indecomposability is defined for graphs with at least 2 vertices")
    if n < 3:
        raise GraphError("n must be at least 3")
    return not _has_nonconstant_labeling(g, n)


def hereditary_scan(
    g: DiGraph, n: int, max_size: int, prune_to_cyclic: bool = True
) -> Optional[tuple[int, ...]]:
    """First (smallest, then lexicographically least) vertex set of size 2..max_size
    inducing a cyclically n-indecomposable subgraph; None when everything scanned
    decomposes.

    With pruning, only strongly connected candidate sets are tested: any set with
    a source strong component splits into a full directed decomposition, so it
    can never witness indecomposability (in particular cycle-free sets cannot).
    """
    if max_size > g.vertex_count:
        raise GraphError("max_size exceeds the vertex count")
    if prune_to_cyclic:
        candidates: Iterable[tuple[int, ...]] = _strongly_connected_subsets(g, max_size)
    else:
        candidates = (
            comb
            for size in range(2, max_size + 1)
            for comb in combinations(range(g.vertex_count), size)
        )
    for vs in candidates:
        sub, _ = induced_subgraph(g, vs)
        if is_cyclically_indecomposable(sub, n):
            return tuple(vs)
    return None


def _cycles_up_to(g: DiGraph, max_len: int) -> list[frozenset]:
    """Vertex sets of all simple directed cycles of length 2..max_len."""
    n = g.vertex_count
    out = g.out_adj
    edges = g.edges
    found: set[frozenset] = set()
    on_path = [False] * n
    path: list[int] = []

    def extend(s: int, cur: int) -> None:
        if len(path) >= 2 and (cur, s) in edges:
            found.add(frozenset(path))
        if len(path) == max_len:
            return
        for w in out[cur]:
            if w > s and not on_path[w]:
                on_path[w] = True
                path.append(w)
                extend(s, w)
                path.pop()
                on_path[w] = False

    for s in range(n):
        on_path[s] = True
        path.append(s)
        extend(s, s)
        path.pop()
        on_path[s] = False
    return sorted(found, key=lambda c: (len(c), tuple(sorted(c))))


def _strongly_connected_subsets(g: DiGraph, max_size: int) -> list[tuple[int, ...]]:
    """Every strongly connected vertex set of size 2..max_size, as unions of
    simple cycles chained through shared vertices."""
    cycles = _cycles_up_to(g, max_size)
    seen: set[frozenset] = set(cycles)
    frontier: list[frozenset] = list(cycles)
    while frontier:
        nxt: list[frozenset] = []
        for state in frontier:
            for c in cycles:
                if state & c and not c <= state:
                    u = state | c
                    if len(u) <= max_size and u not in seen:
                        seen.add(u)
                        nxt.append(u)
        frontier = nxt
    return sorted((tuple(sorted(s)) for s in seen), key=lambda t: (len(t), t))
