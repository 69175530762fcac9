# transform/lowering.py
"""
Lowerings from hypergraphs (and complexes read as hypergraphs) back to
plain graphs.
"""

from itertools import combinations
from typing import Dict, List, Tuple

from core.errors import InvalidParameter, KindMismatch
from core.graph import Edge, Graph, build_graph
from hogdm.structures import CellComplex, Hypergraph, build_hypergraph


def _as_hypergraph(H) -> Hypergraph:
    if isinstance(H, Hypergraph):
        return H
    if isinstance(H, CellComplex):
        sets = sorted({H.vertex_sets[c.id] for c in H.cells if c.dim > 0}, key=lambda s: (len(s), sorted(s)))
        vertex_rows = None
        if H.features is not None:
            vertex_rows = [H.features[H.position[cid]] for cid in H.vertex_ids]
        return build_hypergraph(H.n, sets, vertex_rows)
    raise KindMismatch(f"lowering needs a hypergraph, simplicial or cell complex, not {H.kind}")


def _pair_counts(H: Hypergraph) -> Dict[Edge, int]:
    counts: Dict[Edge, int] = {}
    for e in H.hyperedges:
        for u, v in combinations(sorted(e), 2):
            counts[(u, v)] = counts.get((u, v), 0) + 1
    return counts


def clique_expansion(H) -> Graph:
    """Edge {u,v} whenever some hyperedge contains both; vertex features carried over."""
    H = _as_hypergraph(H)
    return build_graph(H.n, sorted(_pair_counts(H)), H.vertex_features)


def weighted_lowering(H) -> Graph:
    """Clique expansion with edge weight w_uv = number of shared hyperedges as a width-1 edge feature.

    Vertex features are not carried because the graph's feature width is the weight width.
    """
    H = _as_hypergraph(H)
    counts = _pair_counts(H)
    edges = sorted(counts)
    return build_graph(H.n, edges, edge_features=[(float(counts[e]),) for e in edges])


def star_expansion(H) -> Graph:
    """Bipartite graph with vertex n+j standing for hyperedge j.

    A trailing flag column marks the class: 0.0 for original vertices and
    1.0 for hyperedge vertices. Missing hyperedge features become zeros.
    """
    H = _as_hypergraph(H)
    edges: List[Tuple[int, int]] = [(v, H.n + j) for j, e in enumerate(H.hyperedges) for v in sorted(e)]
    width = H.width
    rows: List[Tuple[float, ...]] = []
    for v in range(H.n):
        base = H.vertex_features[v] if H.vertex_features is not None else (0.0,) * width
        rows.append(tuple(base) + (0.0,))
    for j in range(H.m):
        base = H.hyperedge_features[j] if H.hyperedge_features is not None else (0.0,) * width
        rows.append(tuple(base) + (1.0,))
    return build_graph(H.n + H.m, edges, rows)


def bipartite_lowering(H) -> Graph:
    return star_expansion(H)


def lowering(H, scheme: str) -> Graph:
    table = {
        "clique": clique_expansion,
        "star": star_expansion,
        "bipartite": bipartite_lowering,
        "weighted": weighted_lowering,
    }
    if scheme not in table:
        raise InvalidParameter(f"unknown lowering {scheme!r}; choose from {sorted(table)}")
    return table[scheme](H)
