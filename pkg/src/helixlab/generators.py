"""Constructions for the named graphs the library studies, plus seeded
random graphs for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .decomposition import D_LABEL, Labeling
from .digraph import DiGraph, GraphError, graph_from_edges, induced_subgraph


@dataclass(frozen=True)
class NKParams:
    """Parameters of the circulant graph with edges i -> i+1, ..., i -> i+k (mod N).

    Requires 1 <= k < N; the ratio N/k is the graph's rotational density.
    """

    N: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "k", int(self.k))
        if self.k < 1:
            raise GraphError("k must be positive")
        if self.k >= self.N:
            raise GraphError("k must be smaller than N")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.N, self.k)


def make_nk_cycle(params: NKParams) -> DiGraph:
    """The graph on Z_N with an edge from i to i+j (mod N) for every 1 <= j <= k."""
    big_n, k = params.N, params.k
    g = graph_from_edges(
        big_n, ((i, (i + j) % big_n) for i in range(big_n) for j in range(1, k + 1))
    )
    assert g.edge_count == big_n * k
    return g


def make_linear_order(m: int) -> DiGraph:
    """The transitive tournament on m vertices: an edge i -> j exactly when i < j."""
    if m < 1:
        raise GraphError("a linear order needs at least one vertex")
    return graph_from_edges(m, ((i, j) for i in range(m) for j in range(i + 1, m)))


def circle_sample(r, big_n: int) -> DiGraph:
    """Sample ``big_n`` equally spaced points of the circle and join each point
    to every point within one r-th of a full turn counterclockwise of it.

    ``r`` must be a rational at least 3.  The result coincides with
    ``make_nk_cycle(NKParams(big_n, floor(big_n / r)))``, which is asserted.
    """
    r = Fraction(r)
    if r < 3:
        raise GraphError("r must be at least 3")
    big_n = int(big_n)
    if big_n < 1:
        raise GraphError("need at least one sample point")
    k = (big_n * r.denominator) // r.numerator
    if k == 0:
        raise GraphError("sampling too sparse: the angular window captures no point")
    edges = []
    for i in range(big_n):
        for j in range(1, big_n):
            if Fraction(j, big_n) <= 1 / r:  # the fraction of a turn from point i to i+j
                edges.append((i, (i + j) % big_n))
    g = graph_from_edges(big_n, edges)
    assert g == make_nk_cycle(NKParams(big_n, k))
    return g


def subsample_cycle(g: DiGraph, m: int) -> DiGraph:
    """Keep the last vertex of each consecutive block of ``m`` from a uniform
    circulant, re-indexed; the result carries the coarser circulant's edges.

    ``g`` must be ``make_nk_cycle(NKParams(m * N, m * k))`` for some N, k.
    """
    m = int(m)
    if m < 1:
        raise GraphError("m must be positive")
    total = g.vertex_count
    if total == 0 or total % m:
        raise GraphError("vertex count is not divisible by m")
    mk = len(g.out_adj[0])
    if mk < 1 or mk % m or g != make_nk_cycle(NKParams(total, mk)):
        raise GraphError("expected a uniform circulant built by make_nk_cycle")
    coarse_n = total // m
    chosen = [m * (i + 1) - 1 for i in range(coarse_n)]
    sub, _ = induced_subgraph(g, chosen)
    expected = make_nk_cycle(NKParams(coarse_n, mk // m))
    assert expected.edges <= sub.edges, "subsample lost a required edge"
    return sub


_FIGURE4_NAMES = (
    "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "d1", "d2", "d3", "e1",
)

# Four length-3 chains through the hub e1, plus one chord from each chain's top
# into the middle of the next chain around.
_FIGURE4_EDGES = (
    (12, 0), (0, 1), (1, 2), (2, 12),
    (12, 3), (3, 4), (4, 5), (5, 12),
    (12, 6), (6, 7), (7, 8), (8, 12),
    (12, 9), (9, 10), (10, 11), (11, 12),
    (2, 4), (5, 7), (8, 10), (11, 1),
)


def figure4_graph() -> tuple[DiGraph, Labeling]:
    """The 13-vertex hub-and-four-chains graph, with its bundled 4-part labeling
    (one chain per part, the hub in D).

    The graph is cyclically 4-indecomposable, yet all its bounded-length helix
    covers scan as hereditarily decomposable; the verification suite pins both.
    """
    g = graph_from_edges(13, _FIGURE4_EDGES, labels=enumerate(_FIGURE4_NAMES))
    assignment = (0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, D_LABEL)
    return g, Labeling(g, 4, assignment)


def random_digraph(seed: int, n: int, edge_probability: float) -> DiGraph:
    """Seeded Erdos-Renyi style digraph; deterministic for a fixed seed
    (Mersenne Twister via random.Random)."""
    if not 0 <= edge_probability <= 1:
        raise GraphError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < edge_probability
    ]
    return graph_from_edges(n, edges)


def random_dag(seed: int, n: int, edge_probability: float) -> DiGraph:
    """Seeded random DAG: sampled pairs are oriented low-to-high index."""
    if not 0 <= edge_probability <= 1:
        raise GraphError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < edge_probability
    ]
    return graph_from_edges(n, edges)
