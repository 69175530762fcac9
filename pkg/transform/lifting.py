# transform/lifting.py
"""
Liftings from plain graphs to higher-order structures. Each lifting is
isomorphism preserving: isomorphic inputs give isomorphic outputs and
non-isomorphic inputs stay apart.
"""

from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import BoundsInverted, BudgetExceeded, InvalidParameter, KindMismatch, OutOfRange
from core.graph import Graph, Vector
from adjacency.motifs import motif_adjacency
from hogdm.structures import (
    Cell,
    CellComplex,
    MotifGraph,
    NodeTupleCollection,
    SimplicialComplex,
    build_cell_complex,
    build_motif_graph,
    build_node_tuple_collection,
    build_simplicial_complex,
)
from transform.cycles import chordless_cycles, cliques, cycle_edges, simple_cycles


def reduce_features(rows: Sequence[Vector], how: Optional[str] = None) -> Vector:
    how = how or HOGNNConfig.LIFT_FEATURE_REDUCE
    stacked = np.array(rows, dtype=float)
    pooled = stacked.mean(axis=0) if how == "mean" else stacked.sum(axis=0)
    return tuple(float(x) for x in pooled)


def _member_features(G: Graph, members: Sequence[int]) -> Optional[Vector]:
    if G.features is None:
        return None
    if len(members) == 2 and G.edge_features is not None:
        return G.edge_feature(members[0], members[1])
    return reduce_features([G.features[v] for v in members])


def _require_undirected(G: Graph):
    if G.directed:
        raise KindMismatch("liftings are defined on undirected graphs")


def clique_complex_lift(G: Graph, k: int) -> SimplicialComplex:
    """One hyperedge per clique with 2..k vertices."""
    _require_undirected(G)
    if k < 2:
        raise InvalidParameter(f"clique size cap must be at least 2, got {k}")
    hyperedges = [c for c in cliques(G, k) if len(c) >= 2]
    features = None
    if G.features is not None:
        features = [_member_features(G, c) for c in hyperedges]
    elif G.edge_features is not None:
        trace.warn("edge features without vertex features are not carried into the clique complex")
    trace.trace("lift.cqc", {"n": G.n, "k": k, "hyperedges": len(hyperedges)})
    return build_simplicial_complex(G.n, hyperedges, G.features, features)


def cell_lift(G: Graph, k_cl: int, k_ind_cycle: int, k_cycle: int) -> CellComplex:
    """Cells for cliques up to k_cl vertices, and 2-cells for induced (<= k_ind_cycle) and any (<= k_cycle) cycles."""
    _require_undirected(G)
    if k_cycle > k_ind_cycle:
        raise BoundsInverted(f"k_cycle ({k_cycle}) must not exceed k_ind_cycle ({k_ind_cycle})")
    if k_cl < 2:
        raise InvalidParameter(f"k_cl must be at least 2 so that edges become 1-cells, got {k_cl}")

    cells: List[Cell] = []
    features: List[Optional[Vector]] = []
    ids: Dict[FrozenSet[int], int] = {}

    def add(members: Sequence[int], dim: int, boundary: Sequence[int], feature: Optional[Vector]):
        cid = len(cells)
        cells.append(Cell(cid, dim, frozenset(boundary)))
        features.append(feature)
        return cid

    for v in range(G.n):
        ids[frozenset([v])] = add([v], 0, [], G.features[v] if G.features is not None else None)
    edge_ids: Dict[Tuple[int, int], int] = {}
    for u, v in G.edges:
        edge_ids[(u, v)] = add([u, v], 1, [ids[frozenset([u])], ids[frozenset([v])]], _member_features(G, [u, v]))
        ids[frozenset([u, v])] = edge_ids[(u, v)]

    # 2-cells: clique triangles and qualifying cycles, one per distinct edge set
    two_cells: Dict[FrozenSet[Tuple[int, int]], Tuple[int, ...]] = {}
    if k_cl >= 3:
        for c in cliques(G, 3):
            if len(c) == 3:
                two_cells[cycle_edges(c)] = c
    for cycle in simple_cycles(G, k_cycle) + chordless_cycles(G, k_ind_cycle):
        two_cells.setdefault(cycle_edges(cycle), cycle)
    for edges, members in sorted(two_cells.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        cid = add(members, 2, [edge_ids[e] for e in sorted(edges)], _member_features(G, sorted(members)))
        if len(members) == 3:
            ids[frozenset(members)] = cid

    # higher cells from larger cliques
    for c in cliques(G, k_cl):
        if len(c) < 4:
            continue
        faces = [ids[frozenset(f)] for f in combinations(c, len(c) - 1)]
        ids[frozenset(c)] = add(c, len(c) - 1, faces, _member_features(G, c))

    trace.trace("lift.cell", {"n": G.n, "cells": len(cells), "two_cells": len(two_cells)})
    return build_cell_complex(cells, features if G.features is not None else None)


def iso_type(v: Sequence[int], G: Graph) -> Vector:
    """Equality indicators, adjacency indicators (pairs i<j), then the members' features."""
    v = tuple(int(x) for x in v)
    for x in v:
        if x < 0 or x >= G.n:
            raise OutOfRange(f"tuple entry {x} not in [0,{G.n})")
    pairs = list(combinations(range(len(v)), 2))
    equal = [1.0 if v[i] == v[j] else 0.0 for i, j in pairs]
    adjacent = [1.0 if v[i] != v[j] and G.has_edge(v[i], v[j]) else 0.0 for i, j in pairs]
    feats: List[float] = []
    if G.features is not None:
        for x in v:
            feats.extend(G.features[x])
    return tuple(equal + adjacent + feats)


def iso_type_lift(G: Graph, k_max: int, lengths: str = "exact") -> NodeTupleCollection:
    """All vertex tuples with iso-type features; lengths="exact" keeps k_max-tuples, "upto" keeps 2..k_max."""
    if k_max < 1:
        raise InvalidParameter(f"k_max must be positive, got {k_max}")
    if G.n > HOGNNConfig.MAX_TUPLE_N or k_max > HOGNNConfig.MAX_K:
        raise BudgetExceeded(
            f"tuple lifting is capped at n <= {HOGNNConfig.MAX_TUPLE_N}, k <= {HOGNNConfig.MAX_K} "
            f"(got n={G.n}, k={k_max})"
        )
    if lengths == "exact":
        sizes = [k_max]
    elif lengths == "upto":
        sizes = list(range(2, k_max + 1))
    else:
        raise InvalidParameter(f"lengths must be 'exact' or 'upto', got {lengths!r}")

    tuples = [t for k in sizes for t in product(range(G.n), repeat=k)]
    return build_node_tuple_collection(G, tuples, k_max, [iso_type(t, G) for t in tuples])


def motif_lift(G: Graph, motifs: Sequence[Graph]) -> MotifGraph:
    return build_motif_graph(G, list(motifs), [motif_adjacency(G, m) for m in motifs])
