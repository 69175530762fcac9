# hogdm/queries.py
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx

from core.config import HOGNNConfig
from core.errors import EmptyStructure, InvalidParameter, KindMismatch, TooLarge, UnknownEntity
from core.graph import Graph, VertexPermutation, as_permutation, apply_permutation, find_graph_isomorphism
from hogdm.structures import (
    Cell,
    CellComplex,
    EntityRef,
    HOStructure,
    Hypergraph,
    MotifGraph,
    NestedGraph,
    NodeTupleCollection,
    SimplicialComplex,
    SubgraphCollection,
    SubgraphCountGraph,
    build_cell_complex,
    build_hypergraph,
    build_motif_graph,
    build_nested_graph,
    build_node_tuple_collection,
    build_subgraph,
    build_subgraph_collection,
)


# ----------------------------------------------------------------------------
# Entities
# ----------------------------------------------------------------------------


def entity_refs(H: HOStructure) -> List[EntityRef]:
    """All entities of H in canonical order."""
    if isinstance(H, Hypergraph):
        return [EntityRef("vertex", v) for v in range(H.n)] + [EntityRef("hyperedge", j) for j in range(H.m)]
    if isinstance(H, CellComplex):
        return [EntityRef("cell", c.id) for c in H.cells]
    if isinstance(H, NodeTupleCollection):
        return [EntityRef("tuple", i) for i in range(len(H.tuples))]
    if isinstance(H, SubgraphCollection):
        return [EntityRef("subgraph", i) for i in range(len(H.subgraphs))]
    if isinstance(H, Graph):
        return [EntityRef("vertex", v) for v in range(H.n)]
    raise KindMismatch(f"{H.kind} structures have no entity enumeration")


def has_entity(H: HOStructure, ref: EntityRef) -> bool:
    if isinstance(H, Hypergraph):
        limit = H.n if ref.cls == "vertex" else H.m if ref.cls == "hyperedge" else -1
        return 0 <= ref.id < limit
    if isinstance(H, CellComplex):
        return ref.cls == "cell" and ref.id in H.by_id
    if isinstance(H, NodeTupleCollection):
        return ref.cls == "tuple" and 0 <= ref.id < len(H.tuples)
    if isinstance(H, SubgraphCollection):
        return ref.cls == "subgraph" and 0 <= ref.id < len(H.subgraphs)
    if isinstance(H, Graph):
        return ref.cls == "vertex" and 0 <= ref.id < H.n
    return False


def require_entity(H: HOStructure, ref: EntityRef) -> None:
    if not has_entity(H, ref):
        raise UnknownEntity(f"{ref} is not an entity of this {H.kind}")


def vertex_set(H: HOStructure, ref: EntityRef) -> FrozenSet[int]:
    """The vertex set of an entity (v-hat = {v}, e-hat = e, cells via their closure)."""
    require_entity(H, ref)
    if isinstance(H, Hypergraph):
        return frozenset([ref.id]) if ref.cls == "vertex" else H.hyperedges[ref.id]
    if isinstance(H, CellComplex):
        return H.vertex_sets[ref.id]
    if isinstance(H, NodeTupleCollection):
        return frozenset(H.tuples[ref.id])
    if isinstance(H, SubgraphCollection):
        return frozenset(H.subgraphs[ref.id].vertices)
    return frozenset([ref.id])


def entity_dimension(H: HOStructure, ref: EntityRef) -> int:
    if isinstance(H, CellComplex):
        require_entity(H, ref)
        return H.by_id[ref.id].dim
    return len(vertex_set(H, ref)) - 1


def state_class(H: HOStructure, ref: EntityRef) -> str:
    """Name of the feature matrix that holds this entity's row."""
    if isinstance(H, SimplicialComplex):
        return f"simplex_{entity_dimension(H, ref)}"
    if isinstance(H, CellComplex):
        return f"cell_{H.by_id[ref.id].dim}"
    return ref.cls


def entity_classes(H: HOStructure) -> Dict[str, List[EntityRef]]:
    """Entities grouped by state class, classes and rows both in canonical order."""
    groups: Dict[str, List[EntityRef]] = {}
    for ref in entity_refs(H):
        groups.setdefault(state_class(H, ref), []).append(ref)
    if isinstance(H, SimplicialComplex):
        groups = dict(sorted(groups.items(), key=lambda kv: int(kv[0].split("_")[1])))
    return groups


def entity_rows(H: HOStructure) -> Dict[EntityRef, Tuple[str, int]]:
    rows: Dict[EntityRef, Tuple[str, int]] = {}
    for cls, refs in entity_classes(H).items():
        for i, ref in enumerate(refs):
            rows[ref] = (cls, i)
    return rows


# ----------------------------------------------------------------------------
# Node sets and dimension
# ----------------------------------------------------------------------------


def p_node_sets(H: Hypergraph, p: int) -> Set[FrozenSet[int]]:
    if p < 0:
        raise InvalidParameter(f"p must be non-negative, got {p}")
    if p == 0:
        return {frozenset([v]) for v in range(H.n)}
    return {e for e in H.hyperedges if len(e) == p + 1}


def dimension(H) -> int:
    if isinstance(H, CellComplex):
        if not H.cells:
            raise EmptyStructure("cell complex has no cells")
        return H.max_dim
    if isinstance(H, Hypergraph):
        if H.n == 0 and H.m == 0:
            raise EmptyStructure("simplicial complex has no vertices")
        return max((len(e) - 1 for e in H.hyperedges), default=0)
    raise KindMismatch(f"dimension is defined for simplicial and cell complexes, not {H.kind}")


# ----------------------------------------------------------------------------
# Relabeling
# ----------------------------------------------------------------------------


def _move_rows(rows, p: VertexPermutation):
    if rows is None:
        return None
    moved = [None] * len(rows)
    for v in range(len(rows)):
        moved[p[v]] = rows[v]
    return moved


def relabel(H: HOStructure, p) -> HOStructure:
    """Apply a vertex relabeling v -> p[v] to any structure kind."""
    if isinstance(H, Graph):
        return apply_permutation(H, p)
    p = as_permutation(p, H.n)

    if isinstance(H, Hypergraph):
        return build_hypergraph(
            H.n,
            [[p[v] for v in e] for e in H.hyperedges],
            _move_rows(H.vertex_features, p),
            H.hyperedge_features,
            cls=type(H),
        )

    if isinstance(H, CellComplex):
        rename = {H.vertex_ids[i]: H.vertex_ids[p[i]] for i in range(H.n)}
        cells = [
            Cell(rename.get(c.id, c.id), c.dim, frozenset(rename.get(b, b) for b in c.boundary))
            for c in H.cells
        ]
        return build_cell_complex(cells, H.features)

    if isinstance(H, NodeTupleCollection):
        return build_node_tuple_collection(
            apply_permutation(H.base, p),
            [tuple(p[x] for x in t) for t in H.tuples],
            H.k_max,
            H.tuple_features,
        )

    if isinstance(H, SubgraphCollection):
        subgraphs = [
            build_subgraph(
                [p[v] for v in s.vertices],
                [(p[u], p[v]) for u, v in s.edges],
                p[s.anchor] if s.anchor is not None else None,
            )
            for s in H.subgraphs
        ]
        return build_subgraph_collection(apply_permutation(H.base, p), subgraphs, H.ordered, H.subgraph_features)

    if isinstance(H, MotifGraph):
        idx = list(p.inverse().mapping)
        mats = [H.matrix(i)[idx][:, idx] for i in range(len(H.motifs))]
        return build_motif_graph(apply_permutation(H.base, p), H.motifs, mats)

    if isinstance(H, SubgraphCountGraph):
        base = apply_permutation(H.base, p)
        edge_counts = None
        if H.edge_counts is not None:
            moved = {}
            for (u, v), row in zip(H.base.edges, H.edge_counts):
                a, b = p[u], p[v]
                moved[(min(a, b), max(a, b))] = row
            edge_counts = tuple(moved[e] for e in base.edges)
        return SubgraphCountGraph(
            base=base,
            motifs=H.motifs,
            vertex_counts=tuple(_move_rows(H.vertex_counts, p)),
            edge_counts=edge_counts,
        )

    if isinstance(H, NestedGraph):
        return build_nested_graph(apply_permutation(H.outer, p), _move_rows(H.inner, p))

    raise KindMismatch(f"cannot relabel a {type(H).__name__}")


# ----------------------------------------------------------------------------
# Structure isomorphism
# ----------------------------------------------------------------------------
#
# Every kind is encoded as a labeled digraph over its entities (vertex
# nodes plus one node per hyperedge, cell, tuple or subgraph). Two
# structures are isomorphic iff their encodings are, with node labels
# carrying entity class and features and arc labels carrying roles.


def _feature(rows, i) -> tuple:
    return rows[i] if rows is not None else ()


def _add_vertices(D: nx.DiGraph, G: Graph, extra=None, inner=None):
    for v in range(G.n):
        D.add_node(("v", v), cls="vertex", x=(_feature(G.features, v), extra[v] if extra else ()))
        if inner is not None:
            D.nodes[("v", v)]["inner"] = inner[v]
    for i, (u, v) in enumerate(G.edges):
        D.add_edge(("v", u), ("v", v), x=("base", _feature(G.edge_features, i)))
        if not G.directed:
            D.add_edge(("v", v), ("v", u), x=("base", _feature(G.edge_features, i)))


def _entity_graph(S: HOStructure) -> nx.DiGraph:
    D = nx.DiGraph()

    if isinstance(S, Hypergraph):
        for v in range(S.n):
            D.add_node(("v", v), cls="vertex", x=_feature(S.vertex_features, v))
        for j, e in enumerate(S.hyperedges):
            D.add_node(("e", j), cls="hyperedge", x=_feature(S.hyperedge_features, j))
            D.add_edges_from(((("e", j), ("v", v)) for v in e), x=())
        return D

    if isinstance(S, CellComplex):
        for pos, c in enumerate(S.cells):
            D.add_node(("c", c.id), cls="cell", x=(c.dim, _feature(S.features, pos)))
        for c in S.cells:
            D.add_edges_from(((("c", c.id), ("c", b)) for b in c.boundary), x=())
        return D

    if isinstance(S, NodeTupleCollection):
        _add_vertices(D, S.base)
        for i, t in enumerate(S.tuples):
            D.add_node(("t", i), cls="tuple", x=(len(t), _feature(S.tuple_features, i)))
            for v in set(t):
                D.add_edge(("t", i), ("v", v), x=tuple(pos for pos, x in enumerate(t) if x == v))
        return D

    if isinstance(S, SubgraphCollection):
        _add_vertices(D, S.base)
        for i, s in enumerate(S.subgraphs):
            D.add_node(("s", i), cls="subgraph", x=(i if S.ordered else None, _feature(S.subgraph_features, i)))
            for v in set(s.vertices) | ({s.anchor} if s.anchor is not None else set()):
                D.add_edge(("s", i), ("v", v), x=(v in s.vertices, v == s.anchor))
            for u, v in s.edges:
                D.add_node(("se", i, u, v), cls="subedge", x=())
                D.add_edge(("s", i), ("se", i, u, v), x=("owns",))
                D.add_edges_from(((("se", i, u, v), ("v", w)) for w in (u, v)), x=("end",))
        return D

    if isinstance(S, MotifGraph):
        mats = [S.matrix(i) for i in range(len(S.motifs))]
        _add_vertices(D, S.base, extra=[tuple(int(W[v, v]) for W in mats) for v in range(S.n)])
        for u in range(S.n):
            for v in range(S.n):
                weights = tuple(int(W[u, v]) for W in mats)
                if u == v or not (any(weights) or D.has_edge(("v", u), ("v", v))):
                    continue
                base = D.edges[("v", u), ("v", v)]["x"] if D.has_edge(("v", u), ("v", v)) else None
                D.add_edge(("v", u), ("v", v), x=(base, weights))
        return D

    if isinstance(S, SubgraphCountGraph):
        _add_vertices(D, S.base, extra=S.vertex_counts)
        for i, (u, v) in enumerate(S.base.edges):
            counts = S.edge_counts[i] if S.edge_counts is not None else ()
            D.edges[("v", u), ("v", v)]["x"] += (counts,)
            if not S.base.directed:
                D.edges[("v", v), ("v", u)]["x"] += (counts,)
        return D

    if isinstance(S, NestedGraph):
        _add_vertices(D, S.outer, inner=S.inner)
        return D

    raise KindMismatch(f"cannot compare {type(S).__name__} structures")


def _same_entity(a: dict, b: dict) -> bool:
    if a["cls"] != b["cls"] or a["x"] != b["x"]:
        return False
    if "inner" in a:
        return find_graph_isomorphism(a["inner"], b["inner"]) is not None
    return True


def _same_arc(a: dict, b: dict) -> bool:
    return a["x"] == b["x"]


def ho_isomorphic_bruteforce(A: HOStructure, B: HOStructure) -> bool:
    """True iff some vertex bijection maps A onto B, preserving every entity and feature."""
    if A.kind != B.kind:
        raise KindMismatch(f"cannot compare a {A.kind} with a {B.kind}")
    cap = HOGNNConfig.MAX_HO_ISO_N
    if A.n > cap or B.n > cap:
        raise TooLarge(f"structure isomorphism is capped at {cap} vertices (got {A.n}, {B.n})")
    if isinstance(A, Graph):
        return find_graph_isomorphism(A, B) is not None
    if A.n != B.n:
        return False
    if isinstance(A, NodeTupleCollection) and A.k_max != B.k_max:
        return False
    if isinstance(A, SubgraphCollection) and A.ordered != B.ordered:
        return False
    if isinstance(A, (MotifGraph, SubgraphCountGraph)) and A.motifs != B.motifs:
        return False
    return nx.is_isomorphic(_entity_graph(A), _entity_graph(B), node_match=_same_entity, edge_match=_same_arc)
