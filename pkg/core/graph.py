# core/graph.py
"""
Plain graphs: construction, relabeling, disjoint unions and the
brute-force isomorphism oracle used for desk-scale verification.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism
import numpy as np

from core.config import HOGNNConfig
from core.errors import (
    DuplicateEdge,
    FeatureWidthMismatch,
    InvalidParameter,
    KindMismatch,
    OutOfRange,
    SizeMismatch,
    TooLarge,
)

Edge = Tuple[int, int]
Vector = Tuple[float, ...]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: Tuple[Edge, ...]
    directed: bool = False
    features: Optional[Tuple[Vector, ...]] = None
    edge_features: Optional[Tuple[Vector, ...]] = None  # aligned with edges

    kind: ClassVar[str] = "graph"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def width(self) -> int:
        if self.features:
            return len(self.features[0])
        if self.edge_features:
            return len(self.edge_features[0])
        return 0

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        nbrs: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            if not self.directed:
                nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    @cached_property
    def _in_adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        if not self.directed:
            return self._adjacency
        nbrs: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Out-neighbors (all neighbors when undirected)."""
        return self._adjacency[v]

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._in_adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if self.directed:
            return (u, v) in self.edge_set
        return (min(u, v), max(u, v)) in self.edge_set

    def edge_feature(self, u: int, v: int) -> Optional[Vector]:
        if self.edge_features is None:
            return None
        key = (u, v) if self.directed else (min(u, v), max(u, v))
        return self.edge_features[self.edge_index[key]]

    def feature_matrix(self) -> np.ndarray:
        if self.features is None:
            return np.zeros((self.n, 0))
        return np.array(self.features, dtype=float).reshape(self.n, self.width)

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = 1
            if not self.directed:
                A[v, u] = 1
        return A


@dataclass(frozen=True)
class VertexPermutation:
    mapping: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise InvalidParameter(f"permutation is not a bijection on [0,{n}): {self.mapping}")

    def __len__(self) -> int:
        return len(self.mapping)

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "VertexPermutation":
        return cls(tuple(int(x) for x in rng.permutation(n)))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.mapping)
        for v, pv in enumerate(self.mapping):
            inv[pv] = v
        return VertexPermutation(tuple(inv))


def as_feature_rows(rows: Optional[Sequence[Sequence[float]]], count: int, what: str) -> Optional[Tuple[Vector, ...]]:
    if rows is None:
        return None
    rows = [tuple(float(x) for x in row) for row in rows]
    if len(rows) != count:
        raise SizeMismatch(f"{what}: expected {count} feature rows, got {len(rows)}")
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise FeatureWidthMismatch(f"{what}: feature rows have mixed widths {sorted(widths)}")
    return tuple(rows)


def _canonical_edge(u: int, v: int, n: int, directed: bool) -> Edge:
    for x in (u, v):
        if not isinstance(x, (int, np.integer)) or x < 0 or x >= n:
            raise OutOfRange(f"edge endpoint {x} not in [0,{n})")
    u, v = int(u), int(v)
    if u == v and not directed:
        raise OutOfRange(f"self-loop ({u},{v}) in an undirected graph")
    if directed:
        return (u, v)
    return (min(u, v), max(u, v))


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]] = (),
    features: Optional[Sequence[Sequence[float]]] = None,
    directed: bool = False,
    edge_features: Optional[Sequence[Sequence[float]]] = None,
) -> Graph:
    """Build a normalized Graph (undirected edges stored smaller endpoint first, sorted)."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise OutOfRange(f"vertex count must be a non-negative integer, got {n!r}")
    n = int(n)

    edges = [tuple(e) for e in edges]
    canonical = [_canonical_edge(e[0], e[1], n, directed) for e in edges]
    seen = set()
    for e in canonical:
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)

    vertex_rows = as_feature_rows(features, n, "vertices")
    edge_rows = as_feature_rows(edge_features, len(canonical), "edges")
    if vertex_rows and edge_rows and len(vertex_rows[0]) != len(edge_rows[0]):
        raise FeatureWidthMismatch(
            f"vertex width {len(vertex_rows[0])} differs from edge width {len(edge_rows[0])}"
        )

    order = sorted(range(len(canonical)), key=lambda i: canonical[i])
    sorted_edges = tuple(canonical[i] for i in order)
    sorted_edge_rows = tuple(edge_rows[i] for i in order) if edge_rows is not None else None
    return Graph(n=n, edges=sorted_edges, directed=directed, features=vertex_rows, edge_features=sorted_edge_rows)


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"a cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def with_features(G: Graph, features: Optional[Sequence[Sequence[float]]]) -> Graph:
    return build_graph(G.n, G.edges, features, G.directed, G.edge_features)


def to_networkx(G: Graph) -> nx.Graph:
    nxG = nx.DiGraph() if G.directed else nx.Graph()
    nxG.add_nodes_from(range(G.n))
    nxG.add_edges_from(G.edges)
    return nxG


def from_networkx(nxG: nx.Graph) -> Graph:
    nodes = sorted(nxG.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in nxG.edges()]
    return build_graph(len(nodes), edges, directed=nxG.is_directed())


def as_permutation(p, n: int) -> VertexPermutation:
    if not isinstance(p, VertexPermutation):
        p = VertexPermutation(tuple(int(x) for x in p))
    if len(p) != n:
        raise SizeMismatch(f"permutation over {len(p)} vertices applied to a graph with {n}")
    return p


def apply_permutation(G: Graph, p) -> Graph:
    """Relabel vertex v as p[v]; features travel with their vertices and edges."""
    p = as_permutation(p, G.n)
    edges = [(p[u], p[v]) for u, v in G.edges]
    features = None
    if G.features is not None:
        rows: List[Optional[Vector]] = [None] * G.n
        for v in range(G.n):
            rows[p[v]] = G.features[v]
        features = rows
    return build_graph(G.n, edges, features, G.directed, G.edge_features)


def relabel_random(G: Graph, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return apply_permutation(G, VertexPermutation.random(G.n, rng))


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """Induced subgraph relabeled to [0,k) in ascending vertex order; returns the original ids."""
    kept = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(kept)}
    edges, edge_rows = [], []
    for i, (u, v) in enumerate(G.edges):
        if u in index and v in index:
            edges.append((index[u], index[v]))
            if G.edge_features is not None:
                edge_rows.append(G.edge_features[i])
    features = [G.features[v] for v in kept] if G.features is not None else None
    sub = build_graph(len(kept), edges, features, G.directed, edge_rows if G.edge_features is not None else None)
    return sub, kept


def labeled_networkx(G: Graph) -> nx.Graph:
    """networkx copy with vertex and edge features as 'x' attributes (empty tuples when absent)."""
    nxG = to_networkx(G)
    for v in range(G.n):
        nxG.nodes[v]["x"] = G.features[v] if G.features is not None else ()
    for i, (u, v) in enumerate(G.edges):
        nxG.edges[u, v]["x"] = G.edge_features[i] if G.edge_features is not None else ()
    return nxG


def _same_x(a: dict, b: dict) -> bool:
    return a["x"] == b["x"]


def find_graph_isomorphism(G1: Graph, G2: Graph) -> Optional[Tuple[int, ...]]:
    """Mapping p with G2 == apply_permutation(G1, p), or None."""
    if G1.n != G2.n or G1.m != G2.m or G1.directed != G2.directed or G1.width != G2.width:
        return None
    if (G1.features is None) != (G2.features is None):
        return None
    if (G1.edge_features is None) != (G2.edge_features is None):
        return None

    Matcher = isomorphism.DiGraphMatcher if G1.directed else isomorphism.GraphMatcher
    matcher = Matcher(labeled_networkx(G1), labeled_networkx(G2), node_match=_same_x, edge_match=_same_x)
    mapping = next(matcher.isomorphisms_iter(), None)
    if mapping is None:
        return None
    return tuple(mapping[v] for v in range(G1.n))


def are_isomorphic_bruteforce(G1: Graph, G2: Graph) -> bool:
    cap = HOGNNConfig.MAX_ISO_N
    if G1.n > cap or G2.n > cap:
        raise TooLarge(f"brute-force isomorphism is capped at n <= {cap} (got {G1.n}, {G2.n})")
    return find_graph_isomorphism(G1, G2) is not None


def disjoint_union(G1: Graph, G2: Graph) -> Tuple[Graph, int]:
    """Union with G2's vertices shifted by G1.n; returns (graph, offset)."""
    if G1.directed != G2.directed:
        raise KindMismatch("cannot unite a directed and an undirected graph")
    featured = [g for g in (G1, G2) if g.n > 0 or g.m > 0]
    if any((g.features is None) != (featured[0].features is None) for g in featured):
        raise FeatureWidthMismatch("one graph carries vertex features and the other does not")
    if any((g.edge_features is None) != (featured[0].edge_features is None) for g in featured):
        raise FeatureWidthMismatch("one graph carries edge features and the other does not")
    if len({g.width for g in featured}) > 1:
        raise FeatureWidthMismatch(f"feature widths differ: {G1.width} vs {G2.width}")

    offset = G1.n
    edges = list(G1.edges) + [(u + offset, v + offset) for u, v in G2.edges]
    features = None
    if featured and featured[0].features is not None:
        features = list(G1.features or ()) + list(G2.features or ())
    edge_rows = None
    if featured and featured[0].edge_features is not None:
        edge_rows = list(G1.edge_features or ()) + list(G2.edge_features or ())
    return build_graph(G1.n + G2.n, edges, features, G1.directed, edge_rows), offset
