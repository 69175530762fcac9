# adjacency/motifs.py
"""
Motif occurrence counting. A copy of a motif is a subgraph (vertex set
plus edge set) of G isomorphic to the motif; labeled embeddings that
produce the same subgraph count once.
"""

from typing import FrozenSet, List, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms import isomorphism
import numpy as np

from core.config import HOGNNConfig
from core.errors import InvalidParameter, KindMismatch, MotifTooLarge
from core.graph import Edge, Graph, build_graph, complete_graph, cycle_graph, path_graph, to_networkx
from hogdm.structures import SubgraphCountGraph

Copy = Tuple[FrozenSet[int], FrozenSet[Edge]]


def _check_motif(motif: Graph):
    if motif.n > HOGNNConfig.MAX_MOTIF_SIZE:
        raise MotifTooLarge(f"motifs are capped at {HOGNNConfig.MAX_MOTIF_SIZE} vertices, got {motif.n}")
    if motif.n == 0 or not nx.is_connected(to_networkx(motif)):
        raise InvalidParameter("motifs must be non-empty and connected")


def motif_copies(G: Graph, motif: Graph) -> Set[Copy]:
    if G.directed or motif.directed:
        raise KindMismatch("motif counting is defined on undirected graphs")
    _check_motif(motif)

    # one copy per image edge set; automorphic embeddings collapse
    matcher = isomorphism.GraphMatcher(to_networkx(G), to_networkx(motif))
    copies: Set[Copy] = set()
    for mapping in matcher.subgraph_monomorphisms_iter():
        image = {m: g for g, m in mapping.items()}
        edges = frozenset((min(image[u], image[v]), max(image[u], image[v])) for u, v in motif.edges)
        copies.add((frozenset(mapping), edges))
    return copies


def motif_adjacency(G: Graph, motif: Graph) -> np.ndarray:
    """W[u][v] = number of motif copies whose edge set contains {u,v}."""
    W = np.zeros((G.n, G.n), dtype=np.int64)
    for _, edges in motif_copies(G, motif):
        for u, v in edges:
            W[u, v] += 1
            W[v, u] += 1
    return W


def subgraph_counts(G: Graph, motifs: Sequence[Graph]) -> SubgraphCountGraph:
    """Per-vertex (and per-edge) number of motif copies containing it, one column per motif."""
    vertex_counts = np.zeros((G.n, len(motifs)), dtype=np.int64)
    edge_counts = np.zeros((G.m, len(motifs)), dtype=np.int64)
    for i, motif in enumerate(motifs):
        for vertices, edges in motif_copies(G, motif):
            for v in vertices:
                vertex_counts[v, i] += 1
            for e in edges:
                edge_counts[G.edge_index[e], i] += 1
    return SubgraphCountGraph(
        base=G,
        motifs=tuple(motifs),
        vertex_counts=tuple(tuple(int(x) for x in row) for row in vertex_counts),
        edge_counts=tuple(tuple(int(x) for x in row) for row in edge_counts),
    )


def standard_motif(name: str) -> Graph:
    """Named templates accepted on the command line."""
    table = {
        "triangle": lambda: complete_graph(3),
        "path3": lambda: path_graph(3),
        "square": lambda: cycle_graph(4),
        "k4": lambda: complete_graph(4),
        "star3": lambda: build_graph(4, [(0, 1), (0, 2), (0, 3)]),
    }
    if name not in table:
        raise InvalidParameter(f"unknown motif {name!r}; choose from {sorted(table)}")
    return table[name]()


def motif_list(names: List[str]) -> List[Graph]:
    return [standard_motif(n) for n in names]
