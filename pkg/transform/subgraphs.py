# transform/subgraphs.py
"""Subgraph collections: ego-nets, node-deleted bags and reconstruction decks."""

from itertools import combinations
from typing import List, Optional

import networkx as nx
import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import InvalidParameter, OutOfRange
from core.graph import Graph, to_networkx
from hogdm.structures import Subgraph, SubgraphCollection, build_subgraph, build_subgraph_collection


def _induced_edges(G: Graph, keep) -> List:
    return [e for e in G.edges if e[0] in keep and e[1] in keep]


def ego_net_collection(G: Graph, r: int, induced: bool = True) -> SubgraphCollection:
    """One subgraph per vertex v holding every vertex within distance r, anchored at v.

    Non-induced ego-nets drop the edges whose endpoints both sit exactly at distance r.
    """
    if r < 1:
        raise InvalidParameter(f"ego-net radius must be at least 1, got {r}")
    nxG = to_networkx(G)
    subgraphs: List[Subgraph] = []
    for v in range(G.n):
        dist = nx.single_source_shortest_path_length(nxG, v, cutoff=r)
        keep = set(dist)
        edges = _induced_edges(G, keep)
        if not induced:
            edges = [(a, b) for a, b in edges if not (dist[a] == r and dist[b] == r)]
        subgraphs.append(build_subgraph(keep, edges, anchor=v))
    trace.trace("subgraphs.ego", {"n": G.n, "r": r, "induced": induced})
    return build_subgraph_collection(G, subgraphs)


def node_deleted_collection(
    G: Graph,
    mode: str = "all",
    count: Optional[int] = None,
    seed: Optional[int] = None,
    probability: Optional[float] = None,
) -> SubgraphCollection:
    """Bag of induced subgraphs with vertices removed.

    mode="all" removes each vertex once (n subgraphs). mode="sampled" draws
    `count` subgraphs, removing every vertex independently with probability
    p (default 1/n); a draw that would remove everything keeps the vertex
    with the largest draw.
    """
    if G.n < 2:
        raise InvalidParameter("node deletion needs at least 2 vertices")
    subgraphs: List[Subgraph] = []
    if mode == "all":
        for v in range(G.n):
            keep = set(range(G.n)) - {v}
            subgraphs.append(build_subgraph(keep, _induced_edges(G, keep)))
    elif mode == "sampled":
        if count is None or count < 1:
            raise InvalidParameter("sampled node deletion needs a positive count")
        p = 1.0 / G.n if probability is None else float(probability)
        if not 0.0 <= p <= 1.0:
            raise InvalidParameter(f"deletion probability must lie in [0,1], got {p}")
        rng = np.random.default_rng(HOGNNConfig.DEFAULT_SEED if seed is None else seed)
        draws = rng.random((count, G.n))
        for row in draws:
            deleted = row < p
            if deleted.all():
                deleted[int(np.argmax(row))] = False
            keep = {v for v in range(G.n) if not deleted[v]}
            subgraphs.append(build_subgraph(keep, _induced_edges(G, keep)))
    else:
        raise InvalidParameter(f"mode must be 'all' or 'sampled', got {mode!r}")
    return build_subgraph_collection(G, subgraphs)


def reconstruction_collection(G: Graph, size: int) -> SubgraphCollection:
    """Every induced subgraph on exactly `size` vertices."""
    if size < 1 or size > G.n:
        raise OutOfRange(f"subgraph size must be in [1,{G.n}], got {size}")
    subgraphs = [build_subgraph(c, _induced_edges(G, set(c))) for c in combinations(range(G.n), size)]
    return build_subgraph_collection(G, subgraphs)
