# hogdm/validation.py
"""
Structure validation. validate() never raises on a bad structure; every
broken invariant becomes one violation naming the offending entity.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List

import networkx as nx
import numpy as np

from core.graph import Graph
from core.state import ValidationRecord
from hogdm.structures import (
    CellComplex,
    HOStructure,
    Hypergraph,
    MotifGraph,
    NestedGraph,
    NodeTupleCollection,
    SimplicialComplex,
    SubgraphCollection,
    SubgraphCountGraph,
)


@dataclass(frozen=True)
class Violation:
    entity: str
    message: str

    def __str__(self) -> str:
        return f"{self.entity}: {self.message}"


@dataclass
class ValidationReport:
    kind: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, entity: str, message: str):
        self.violations.append(Violation(entity, message))

    def as_records(self) -> List[ValidationRecord]:
        return [ValidationRecord(entity=v.entity, message=v.message) for v in self.violations]


def _fmt_set(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def _check_graph(G: Graph, report: ValidationReport, prefix: str = ""):
    seen = set()
    for u, v in G.edges:
        name = f"{prefix}edge ({u},{v})"
        if not (0 <= u < G.n and 0 <= v < G.n):
            report.add(name, f"endpoint outside [0,{G.n})")
        if u == v and not G.directed:
            report.add(name, "self-loop in an undirected graph")
        key = (u, v) if G.directed else (min(u, v), max(u, v))
        if key in seen:
            report.add(name, "duplicate edge")
        seen.add(key)
    widths = {len(r) for r in (G.features or ())} | {len(r) for r in (G.edge_features or ())}
    if len(widths) > 1:
        report.add(f"{prefix}features", f"mixed feature widths {sorted(widths)}")


def _check_hypergraph(H: Hypergraph, report: ValidationReport):
    for e in H.hyperedges:
        if not e:
            report.add("hyperedge {}", "empty hyperedge")
        if any(v < 0 or v >= H.n for v in e):
            report.add(f"hyperedge {_fmt_set(e)}", f"vertex outside [0,{H.n})")
    if len(set(H.hyperedges)) != len(H.hyperedges):
        report.add("hyperedges", "hyperedges are not distinct")
    widths = {len(r) for r in (H.vertex_features or ())} | {len(r) for r in (H.hyperedge_features or ())}
    if len(widths) > 1:
        report.add("features", f"mixed feature widths {sorted(widths)}")


def _check_closure(S: Hypergraph, report: ValidationReport):
    present = set(S.hyperedges)
    missing = []
    for e in S.hyperedges:
        if len(e) == 1:
            report.add(f"hyperedge {_fmt_set(e)}", "size-1 hyperedges are not allowed; vertices play that role")
        for size in range(2, len(e)):
            for sub in combinations(sorted(e), size):
                sub = frozenset(sub)
                if sub not in present and sub not in missing:
                    missing.append(sub)
                    report.add(f"hyperedge {_fmt_set(e)}", f"missing subset {_fmt_set(sub)}")


def _check_cells(C: CellComplex, report: ValidationReport):
    by_id = C.by_id
    for c in C.cells:
        name = f"cell {c.id}"
        dims = [by_id[b].dim for b in c.boundary if b in by_id]
        if len(dims) != len(c.boundary):
            report.add(name, "boundary references unknown cells")
        if c.dim == 0:
            if c.boundary:
                report.add(name, "0-cells must have an empty boundary")
            continue
        if not c.boundary:
            report.add(name, f"{c.dim}-cell has an empty boundary")
        if any(d != c.dim - 1 for d in dims):
            report.add(name, f"boundary of a {c.dim}-cell must contain only {c.dim - 1}-cells")
            continue
        if c.dim == 1 and len(c.boundary) != 2:
            report.add(name, "a 1-cell must be bounded by exactly two distinct 0-cells")
        if c.dim == 2 and not _is_closed_cycle(C, c.boundary):
            report.add(name, "boundary edges do not form a single closed cycle")


def _is_closed_cycle(C: CellComplex, edge_ids) -> bool:
    multigraph = nx.MultiGraph()
    for eid in edge_ids:
        ends = sorted(C.by_id[eid].boundary)
        if len(ends) != 2:
            return False
        multigraph.add_edge(ends[0], ends[1], key=eid)
    if multigraph.number_of_edges() < 2:
        return False
    if any(deg != 2 for _, deg in multigraph.degree()):
        return False
    return nx.is_connected(multigraph)


def _check_tuples(T: NodeTupleCollection, report: ValidationReport):
    _check_graph(T.base, report, "base ")
    for t in T.tuples:
        name = f"tuple {t}"
        if any(x < 0 or x >= T.base.n for x in t):
            report.add(name, f"entry outside [0,{T.base.n})")
        if len(t) < 2 or len(t) > T.k_max:
            report.add(name, f"length {len(t)} outside [2,{T.k_max}]")


def _check_subgraphs(S: SubgraphCollection, report: ValidationReport):
    _check_graph(S.base, report, "base ")
    for i, s in enumerate(S.subgraphs):
        name = f"subgraph {i}"
        members = set(s.vertices)
        if any(v < 0 or v >= S.base.n for v in members):
            report.add(name, "vertices outside the base graph")
        if any(u not in members or v not in members for u, v in s.edges):
            report.add(name, "edge endpoint outside the subgraph's vertex set")
        if s.anchor is not None and s.anchor not in members:
            report.add(name, f"anchor {s.anchor} is not a subgraph vertex")


def _check_motifs(M: MotifGraph, report: ValidationReport):
    _check_graph(M.base, report, "base ")
    adjacency = M.base.adjacency_matrix() > 0
    for i in range(len(M.motifs)):
        W = M.matrix(i)
        name = f"motif {i}"
        if W.shape != (M.base.n, M.base.n):
            report.add(name, f"matrix shape {W.shape} is not {M.base.n}x{M.base.n}")
            continue
        if not np.array_equal(W, W.T):
            report.add(name, "weighted adjacency is not symmetric")
        if (W < 0).any():
            report.add(name, "negative weight")
        if (W[~adjacency] != 0).any():
            report.add(name, "non-zero weight on a non-edge")


def _check_counts(S: SubgraphCountGraph, report: ValidationReport):
    _check_graph(S.base, report, "base ")
    if len(S.vertex_counts) != S.base.n:
        report.add("counts", f"expected {S.base.n} count rows, got {len(S.vertex_counts)}")
    for v, row in enumerate(S.vertex_counts):
        if len(row) != len(S.motifs):
            report.add(f"vertex {v}", f"expected {len(S.motifs)} counts, got {len(row)}")
        if any(x < 0 for x in row):
            report.add(f"vertex {v}", "negative count")
    for e, row in zip(S.base.edges, S.edge_counts or ()):
        if any(x < 0 for x in row):
            report.add(f"edge {e}", "negative count")


def _check_nested(N: NestedGraph, report: ValidationReport):
    _check_graph(N.outer, report, "outer ")
    if len(N.inner) != N.outer.n:
        report.add("inner", f"expected {N.outer.n} inner graphs, got {len(N.inner)}")
    for v, G in enumerate(N.inner):
        _check_graph(G, report, f"inner {v} ")


def validate(H: HOStructure) -> ValidationReport:
    report = ValidationReport(kind=H.kind)
    if isinstance(H, SimplicialComplex):
        _check_hypergraph(H, report)
        _check_closure(H, report)
    elif isinstance(H, Hypergraph):
        _check_hypergraph(H, report)
    elif isinstance(H, CellComplex):
        _check_cells(H, report)
    elif isinstance(H, NodeTupleCollection):
        _check_tuples(H, report)
    elif isinstance(H, SubgraphCollection):
        _check_subgraphs(H, report)
    elif isinstance(H, MotifGraph):
        _check_motifs(H, report)
    elif isinstance(H, SubgraphCountGraph):
        _check_counts(H, report)
    elif isinstance(H, NestedGraph):
        _check_nested(H, report)
    elif isinstance(H, Graph):
        _check_graph(H, report)
    return report
