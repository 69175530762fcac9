# engine/pipelines.py
"""
Subgraph and nested pipelines: run a base model on every subgraph (or
inner graph), then combine the results into one graph embedding.
"""

from typing import List, Optional, Sequence

import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import EmptyCollection, InvalidParameter, OuterRequiresVertexAnchoring, ShapeMismatch
from core.graph import Graph, build_graph
from core.state import ModelSpec
from adjacency.motifs import subgraph_counts
from engine.layers import pool_rows, readout
from engine.model import embed, initial_state, run_model
from hogdm.structures import NestedGraph, SubgraphCollection

OUTER_MODES = ("EgoAverage", "NestedOuterMP", "BagPool", "Fuse")


def _annotated(G: Graph, motifs: Optional[Sequence[Graph]]) -> Graph:
    """Append per-vertex motif counts to the features (ones when G has none)."""
    if not motifs:
        return G
    counts = subgraph_counts(G, list(motifs)).count_matrix().astype(float)
    base = G.feature_matrix() if G.features is not None else np.ones((G.n, 1))
    return build_graph(G.n, G.edges, np.hstack([base, counts]), G.directed)


def _vertex_rows(G: Graph, base: ModelSpec, seed: int) -> np.ndarray:
    return run_model(G, base, seed=seed)["vertex"]


def run_subgraph_pipeline(
    S: SubgraphCollection,
    base: ModelSpec,
    outer: str = "BagPool",
    outer_spec: Optional[ModelSpec] = None,
    pool: Optional[str] = None,
    fuse: str = "concat",
    annotate: Optional[Sequence[Graph]] = None,
    seed: Optional[int] = None,
) -> np.ndarray:
    """Run `base` on every subgraph and combine per `outer`.

    EgoAverage averages each vertex over the subgraphs containing it, then pools.
    NestedOuterMP pools each subgraph, places it on its anchor vertex and runs `outer_spec`.
    BagPool pools the bag of subgraph embeddings.
    Fuse joins (concat or sum) each vertex's centroid row with its own subgraph's embedding, then pools.
    """
    if outer not in OUTER_MODES:
        raise InvalidParameter(f"outer mode must be one of {list(OUTER_MODES)}, got {outer!r}")
    if not S.subgraphs:
        raise EmptyCollection("subgraph pipeline needs at least one subgraph")
    if outer in ("EgoAverage", "NestedOuterMP", "Fuse") and not S.is_vertex_anchored():
        raise OuterRequiresVertexAnchoring(f"{outer} needs exactly one subgraph anchored at every vertex")

    seed = HOGNNConfig.DEFAULT_SEED if seed is None else seed
    pool = pool or base.get("readout", HOGNNConfig.DEFAULT_READOUT)
    graphs = [_annotated(S.as_graph(i), annotate) for i in range(len(S.subgraphs))]
    rows = [_vertex_rows(G, base, seed) for G in graphs]
    pooled = [pool_rows(R, pool) for R in rows]
    trace.trace("pipeline.subgraphs", {"outer": outer, "subgraphs": len(graphs)})

    if outer == "BagPool":
        return pool_rows(np.vstack(pooled), pool)

    n = S.base.n
    if outer == "EgoAverage":
        width = rows[0].shape[1]
        total, hits = np.zeros((n, width)), np.zeros(n)
        for sub, R in zip(S.subgraphs, rows):
            for local, v in enumerate(sub.vertices):
                total[v] += R[local]
                hits[v] += 1
        averaged = np.where(hits[:, None] > 0, total / np.maximum(hits, 1)[:, None], 0.0)
        return pool_rows(averaged, pool)

    per_vertex = np.vstack([pooled[S.anchored_at(v)] for v in range(n)])
    if outer == "NestedOuterMP":
        outer_graph = build_graph(n, S.base.edges, per_vertex, S.base.directed)
        spec = outer_spec or {"layers": [], "readout": pool}
        return embed(outer_graph, spec, seed=seed)

    # Fuse
    centroids = []
    for v in range(n):
        i = S.anchored_at(v)
        centroids.append(rows[i][S.subgraphs[i].vertices.index(v)])
    centroids = np.vstack(centroids)
    if fuse == "concat":
        fused = np.hstack([centroids, per_vertex])
    elif fuse == "sum":
        if centroids.shape != per_vertex.shape:
            raise ShapeMismatch(f"sum fusion needs equal widths, got {centroids.shape[1]} and {per_vertex.shape[1]}")
        fused = centroids + per_vertex
    else:
        raise InvalidParameter(f"fuse must be 'concat' or 'sum', got {fuse!r}")
    return pool_rows(fused, pool)


def nested_run(N: NestedGraph, inner: ModelSpec, outer: ModelSpec, seed: Optional[int] = None) -> np.ndarray:
    """Pool every inner graph into its outer vertex's features, then run the outer model."""
    seed = HOGNNConfig.DEFAULT_SEED if seed is None else seed
    inner_pool = inner.get("readout", HOGNNConfig.DEFAULT_READOUT)
    width = next((initial_state(g)["vertex"].shape[1] for g in N.inner if g.n > 0), None)

    vectors: List[np.ndarray] = []
    for g in N.inner:
        state = initial_state(g, width=width)
        if g.n == 0 and width is not None:
            state = {"vertex": np.zeros((0, width))}
        vectors.append(readout(run_model(g, inner, state=state, seed=seed), inner_pool))
    widths = {v.shape[0] for v in vectors}
    if len(widths) > 1:
        raise ShapeMismatch(f"inner embeddings have different widths {sorted(widths)}")

    features = np.vstack(vectors) if vectors else np.zeros((0, 1))
    outer_graph = build_graph(N.outer.n, N.outer.edges, features, N.outer.directed)
    return embed(outer_graph, outer, seed=seed)
