# hogdm/structures.py
"""
Higher-order graph data models.

Builders enforce structural integrity (ids in range, no duplicates,
uniform feature widths). Kind-level axioms such as simplicial closure or
the cell boundary conditions are checked by hogdm.validation.validate so
that invalid inputs can still be inspected and reported.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import (
    DuplicateEdge,
    FeatureWidthMismatch,
    InvalidParameter,
    OutOfRange,
    SizeMismatch,
    UnknownEntity,
)
from core.graph import Edge, Graph, Vector, as_feature_rows, build_graph

CLASS_RANK = {"vertex": 0, "hyperedge": 1, "cell": 2, "tuple": 3, "subgraph": 4}


@dataclass(frozen=True)
class EntityRef:
    cls: str
    id: int

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (CLASS_RANK[self.cls], self.id)

    def __str__(self) -> str:
        return f"{self.cls}:{self.id}"


def hyperedge_key(e: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    members = tuple(sorted(e))
    return (len(members), members)


def _uniform_width(*blocks: Optional[Tuple[Vector, ...]]) -> None:
    widths = {len(row) for block in blocks if block for row in block}
    if len(widths) > 1:
        raise FeatureWidthMismatch(f"feature widths differ across entity classes: {sorted(widths)}")


# ----------------------------------------------------------------------------
# Hypergraphs and simplicial complexes
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: Tuple[FrozenSet[int], ...]  # canonical order: (size, sorted members)
    vertex_features: Optional[Tuple[Vector, ...]] = None
    hyperedge_features: Optional[Tuple[Vector, ...]] = None

    kind: ClassVar[str] = "hypergraph"

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @property
    def width(self) -> int:
        for block in (self.vertex_features, self.hyperedge_features):
            if block:
                return len(block[0])
        return 0

    @cached_property
    def hyperedge_index(self) -> Dict[FrozenSet[int], int]:
        return {e: j for j, e in enumerate(self.hyperedges)}

    @cached_property
    def memberships(self) -> Tuple[Tuple[int, ...], ...]:
        """Hyperedge indices containing each vertex."""
        rows: List[List[int]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.hyperedges):
            for v in e:
                rows[v].append(j)
        return tuple(tuple(r) for r in rows)

    @property
    def max_size(self) -> int:
        return max((len(e) for e in self.hyperedges), default=1)


@dataclass(frozen=True)
class SimplicialComplex(Hypergraph):
    kind: ClassVar[str] = "sc"


def build_hypergraph(
    n: int,
    hyperedges: Iterable[Iterable[int]],
    vertex_features: Optional[Sequence[Sequence[float]]] = None,
    hyperedge_features: Optional[Sequence[Sequence[float]]] = None,
    cls=Hypergraph,
) -> Hypergraph:
    if n < 0:
        raise OutOfRange(f"vertex count must be non-negative, got {n}")
    sets: List[FrozenSet[int]] = []
    for e in hyperedges:
        members = [int(v) for v in e]
        if not members:
            raise InvalidParameter("hyperedges must contain at least one vertex")
        for v in members:
            if v < 0 or v >= n:
                raise OutOfRange(f"hyperedge vertex {v} not in [0,{n})")
        if len(set(members)) != len(members):
            raise DuplicateEdge(f"hyperedge {members} repeats a vertex")
        sets.append(frozenset(members))
    if len(set(sets)) != len(sets):
        raise DuplicateEdge("hyperedges must be distinct sets")

    vrows = as_feature_rows(vertex_features, n, "vertices")
    erows = as_feature_rows(hyperedge_features, len(sets), "hyperedges")
    _uniform_width(vrows, erows)

    order = sorted(range(len(sets)), key=lambda j: hyperedge_key(sets[j]))
    return cls(
        n=n,
        hyperedges=tuple(sets[j] for j in order),
        vertex_features=vrows,
        hyperedge_features=tuple(erows[j] for j in order) if erows is not None else None,
    )


def build_simplicial_complex(
    n: int,
    hyperedges: Iterable[Iterable[int]],
    vertex_features: Optional[Sequence[Sequence[float]]] = None,
    hyperedge_features: Optional[Sequence[Sequence[float]]] = None,
) -> SimplicialComplex:
    return build_hypergraph(n, hyperedges, vertex_features, hyperedge_features, cls=SimplicialComplex)


def graph_as_hypergraph(G: Graph, cls=Hypergraph) -> Hypergraph:
    """Read a plain graph as a hypergraph with 2-element hyperedges."""
    return build_hypergraph(G.n, [list(e) for e in G.edges], G.features, G.edge_features, cls=cls)


# ----------------------------------------------------------------------------
# Cell complexes
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    boundary: FrozenSet[int]


@dataclass(frozen=True)
class CellComplex:
    cells: Tuple[Cell, ...]  # canonical order: (dim, id)
    features: Optional[Tuple[Vector, ...]] = None  # aligned with cells

    kind: ClassVar[str] = "cc"

    @cached_property
    def by_id(self) -> Dict[int, Cell]:
        return {c.id: c for c in self.cells}

    @cached_property
    def position(self) -> Dict[int, int]:
        return {c.id: i for i, c in enumerate(self.cells)}

    @cached_property
    def vertex_ids(self) -> Tuple[int, ...]:
        """0-cell ids in ascending order; vertex i of the complex is vertex_ids[i]."""
        return tuple(sorted(c.id for c in self.cells if c.dim == 0))

    @cached_property
    def vertex_of(self) -> Dict[int, int]:
        return {cid: i for i, cid in enumerate(self.vertex_ids)}

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def width(self) -> int:
        return len(self.features[0]) if self.features else 0

    @cached_property
    def coboundaries(self) -> Dict[int, Tuple[int, ...]]:
        cob: Dict[int, List[int]] = {c.id: [] for c in self.cells}
        for c in self.cells:
            for b in c.boundary:
                if b in cob:
                    cob[b].append(c.id)
        return {cid: tuple(sorted(ids)) for cid, ids in cob.items()}

    @cached_property
    def vertex_sets(self) -> Dict[int, FrozenSet[int]]:
        """Vertices (as complex vertex indices) in the closure of each cell."""
        memo: Dict[int, FrozenSet[int]] = {}
        for c in self.cells:  # dims ascending, so boundaries are resolved first
            if c.dim == 0:
                memo[c.id] = frozenset([self.vertex_of[c.id]])
            else:
                acc = set()
                for b in c.boundary:
                    acc |= memo.get(b, frozenset())
                memo[c.id] = frozenset(acc)
        return memo

    def cells_of_dim(self, p: int) -> Tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.dim == p)

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)


def build_cell_complex(
    cells: Iterable,
    features: Optional[Sequence[Sequence[float]]] = None,
) -> CellComplex:
    """Cells are (id, dim, boundary) triples or dicts with those keys."""
    parsed: List[Cell] = []
    for c in cells:
        if isinstance(c, Cell):
            parsed.append(c)
        elif isinstance(c, dict):
            parsed.append(Cell(int(c["id"]), int(c["dim"]), frozenset(int(b) for b in c.get("boundary", ()))))
        else:
            cid, dim, boundary = c
            parsed.append(Cell(int(cid), int(dim), frozenset(int(b) for b in boundary)))

    ids = [c.id for c in parsed]
    if len(set(ids)) != len(ids):
        raise DuplicateEdge("cell ids must be unique")
    known = set(ids)
    for c in parsed:
        if c.dim < 0:
            raise OutOfRange(f"cell {c.id} has negative dimension {c.dim}")
        for b in c.boundary:
            if b not in known:
                raise UnknownEntity(f"cell {c.id} references unknown boundary cell {b}")

    rows = as_feature_rows(features, len(parsed), "cells")
    order = sorted(range(len(parsed)), key=lambda i: (parsed[i].dim, parsed[i].id))
    return CellComplex(
        cells=tuple(parsed[i] for i in order),
        features=tuple(rows[i] for i in order) if rows is not None else None,
    )


# ----------------------------------------------------------------------------
# Node-tuple collections
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeTupleCollection:
    base: Graph
    tuples: Tuple[Tuple[int, ...], ...]  # canonical order: (length, lexicographic)
    k_max: int
    tuple_features: Optional[Tuple[Vector, ...]] = None

    kind: ClassVar[str] = "ntcol"

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def tuple_index(self) -> Dict[Tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tuples)}

    @cached_property
    def lengths(self) -> FrozenSet[int]:
        return frozenset(len(t) for t in self.tuples)


def build_node_tuple_collection(
    base: Graph,
    tuples: Iterable[Sequence[int]],
    k_max: Optional[int] = None,
    tuple_features: Optional[Sequence[Sequence[float]]] = None,
) -> NodeTupleCollection:
    items = [tuple(int(x) for x in t) for t in tuples]
    for t in items:
        if not t:
            raise InvalidParameter("node tuples must be non-empty")
        for x in t:
            if x < 0 or x >= base.n:
                raise OutOfRange(f"tuple entry {x} not in [0,{base.n})")
    if len(set(items)) != len(items):
        raise DuplicateEdge("node tuples must be distinct")
    if k_max is None:
        k_max = max((len(t) for t in items), default=2)

    rows = as_feature_rows(tuple_features, len(items), "tuples")
    if rows is not None:
        # widths are uniform per tuple length
        by_length: Dict[int, set] = {}
        for t, row in zip(items, rows):
            by_length.setdefault(len(t), set()).add(len(row))
        if any(len(ws) > 1 for ws in by_length.values()):
            raise FeatureWidthMismatch("tuples of the same length must share one feature width")

    order = sorted(range(len(items)), key=lambda i: (len(items[i]), items[i]))
    return NodeTupleCollection(
        base=base,
        tuples=tuple(items[i] for i in order),
        k_max=int(k_max),
        tuple_features=tuple(rows[i] for i in order) if rows is not None else None,
    )


# ----------------------------------------------------------------------------
# Subgraph collections
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Subgraph:
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    anchor: Optional[int] = None


@dataclass(frozen=True)
class SubgraphCollection:
    base: Graph
    subgraphs: Tuple[Subgraph, ...]
    ordered: bool = False
    subgraph_features: Optional[Tuple[Vector, ...]] = None

    kind: ClassVar[str] = "scol"

    @property
    def n(self) -> int:
        return self.base.n

    def is_vertex_anchored(self) -> bool:
        """True when there is exactly one subgraph anchored at every base vertex."""
        anchors = [s.anchor for s in self.subgraphs]
        return None not in anchors and sorted(anchors) == list(range(self.base.n))

    def anchored_at(self, v: int) -> int:
        for i, s in enumerate(self.subgraphs):
            if s.anchor == v:
                return i
        raise UnknownEntity(f"no subgraph anchored at vertex {v}")

    def as_graph(self, i: int) -> Graph:
        """Subgraph i relabeled to [0,k) in ascending vertex order, with base vertex features."""
        s = self.subgraphs[i]
        index = {v: j for j, v in enumerate(s.vertices)}
        features = [self.base.features[v] for v in s.vertices] if self.base.features is not None else None
        return build_graph(len(s.vertices), [(index[u], index[v]) for u, v in s.edges], features)


def build_subgraph(vertices: Iterable[int], edges: Iterable[Sequence[int]], anchor: Optional[int] = None) -> Subgraph:
    vs = tuple(sorted(set(int(v) for v in vertices)))
    es = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise OutOfRange(f"self-loop ({u},{v}) in a subgraph")
        es.append((min(u, v), max(u, v)))
    if len(set(es)) != len(es):
        raise DuplicateEdge("subgraph edges must be distinct")
    return Subgraph(vertices=vs, edges=tuple(sorted(es)), anchor=anchor)


def build_subgraph_collection(
    base: Graph,
    subgraphs: Iterable[Subgraph],
    ordered: bool = False,
    subgraph_features: Optional[Sequence[Sequence[float]]] = None,
) -> SubgraphCollection:
    items = tuple(subgraphs)
    for s in items:
        for v in s.vertices:
            if v < 0 or v >= base.n:
                raise OutOfRange(f"subgraph vertex {v} not in [0,{base.n})")
    rows = as_feature_rows(subgraph_features, len(items), "subgraphs")
    return SubgraphCollection(base=base, subgraphs=items, ordered=ordered, subgraph_features=rows)


# ----------------------------------------------------------------------------
# Motif graphs, subgraph-count graphs, nested graphs
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MotifGraph:
    base: Graph
    motifs: Tuple[Graph, ...]
    weights: Tuple[Tuple[Tuple[int, ...], ...], ...]  # one n x n matrix per motif

    kind: ClassVar[str] = "motif"

    @property
    def n(self) -> int:
        return self.base.n

    def matrix(self, i: int) -> np.ndarray:
        return np.array(self.weights[i], dtype=np.int64).reshape(self.base.n, self.base.n)


def build_motif_graph(base: Graph, motifs: Sequence[Graph], matrices: Sequence) -> MotifGraph:
    if len(motifs) != len(matrices):
        raise SizeMismatch(f"{len(motifs)} motifs but {len(matrices)} matrices")
    frozen = []
    for W in matrices:
        W = np.asarray(W, dtype=np.int64)
        if W.shape != (base.n, base.n):
            raise SizeMismatch(f"motif matrix shape {W.shape} does not match n={base.n}")
        frozen.append(tuple(tuple(int(x) for x in row) for row in W))
    return MotifGraph(base=base, motifs=tuple(motifs), weights=tuple(frozen))


@dataclass(frozen=True)
class SubgraphCountGraph:
    base: Graph
    motifs: Tuple[Graph, ...]
    vertex_counts: Tuple[Tuple[int, ...], ...]  # n rows, one column per motif
    edge_counts: Optional[Tuple[Tuple[int, ...], ...]] = None  # aligned with base.edges

    kind: ClassVar[str] = "scnt"

    @property
    def n(self) -> int:
        return self.base.n

    def count_matrix(self) -> np.ndarray:
        return np.array(self.vertex_counts, dtype=np.int64).reshape(self.base.n, len(self.motifs))


@dataclass(frozen=True)
class NestedGraph:
    outer: Graph
    inner: Tuple[Graph, ...]  # inner[v] is the graph inside outer vertex v

    kind: ClassVar[str] = "nested"

    @property
    def n(self) -> int:
        return self.outer.n


def build_nested_graph(outer: Graph, inner: Sequence[Graph]) -> NestedGraph:
    if len(inner) != outer.n:
        raise SizeMismatch(f"nested graph needs one inner graph per outer vertex ({outer.n}), got {len(inner)}")
    return NestedGraph(outer=outer, inner=tuple(inner))


HOStructure = Union[
    Graph,
    Hypergraph,
    SimplicialComplex,
    CellComplex,
    NodeTupleCollection,
    SubgraphCollection,
    MotifGraph,
    SubgraphCountGraph,
    NestedGraph,
]
