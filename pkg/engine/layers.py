# engine/layers.py
"""
Layers over hypergraphs, node-tuple collections and plain graphs, plus
readout. Every layer maps (structure, state, parameters) to a fresh
state; the input state is never modified.
"""

from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from core.errors import EmptyIncidence, EmptyState, InvalidParameter, KindMismatch, ShapeMismatch
from core.graph import Graph
from core.state import FunctionSpec, ModelState
from adjacency.matrices import hypergraph_operator, incidence_matrix, masked_power
from engine.functions import (
    activate,
    aggregate,
    apply_function,
    attention_messages,
    coefficient_rule,
    grouped_softmax,
    leaky_relu,
    square_or_identity,
)
from hogdm.structures import Hypergraph, NodeTupleCollection, SimplicialComplex, graph_as_hypergraph
from wiring.channels import Channel, compile_damp, compile_imp

READOUTS = ("sum", "mean", "max", "histogram")


def copy_state(state: ModelState) -> ModelState:
    return {cls: np.array(X, dtype=float, copy=True) for cls, X in state.items()}


def require_class(state: ModelState, cls: str, rows: int) -> np.ndarray:
    if cls not in state:
        raise ShapeMismatch(f"state has no {cls!r} features")
    X = np.asarray(state[cls], dtype=float)
    if X.ndim != 2 or X.shape[0] != rows:
        raise ShapeMismatch(f"{cls}: expected {rows} rows, got shape {X.shape}")
    return X


def channel_arrays(channels: Sequence[Channel]) -> Tuple[np.ndarray, np.ndarray]:
    src = np.array([c.src.id for c in channels], dtype=np.int64)
    dst = np.array([c.dst.id for c in channels], dtype=np.int64)
    return src, dst


def edge_arrays(G: Graph) -> Tuple[np.ndarray, np.ndarray]:
    """src/dst arrays with one entry per in-neighbor, ordered by (src, dst)."""
    pairs = sorted((u, v) for v in range(G.n) for u in G.in_neighbors(v))
    src = np.array([u for u, _ in pairs], dtype=np.int64)
    dst = np.array([v for _, v in pairs], dtype=np.int64)
    return src, dst


def _plain_hypergraph(H) -> Hypergraph:
    if isinstance(H, Graph):
        return graph_as_hypergraph(H)
    if isinstance(H, SimplicialComplex) or not isinstance(H, Hypergraph):
        raise KindMismatch(f"this layer reads a hypergraph (or plain graph), not {H.kind}")
    return H


# ----------------------------------------------------------------------------
# Incidence message passing
# ----------------------------------------------------------------------------


def imp_layer(
    H: Hypergraph,
    state: ModelState,
    psi: Optional[Dict[str, FunctionSpec]] = None,
    phi: Optional[Dict[str, FunctionSpec]] = None,
    aggregators: Optional[Dict[str, str]] = None,
    nonlinearity: str = "identity",
    rng: Optional[np.random.Generator] = None,
) -> ModelState:
    """Nodes -> hyperedges -> nodes within one layer.

    e' = phi_E(x_e, AGG_up psi_V(x_v)), m_e = psi_E(x_e, AGG_msg psi_V(x_v)),
    v' = phi_V(x_v, AGG_down m_f) over the incident hyperedges f of v.
    """
    H = _plain_hypergraph(H)
    psi, phi, aggregators = psi or {}, phi or {}, aggregators or {}
    rng = rng or np.random.default_rng(0)
    Xv = require_class(state, "vertex", H.n)
    Xe = require_class(state, "hyperedge", H.m)
    if H.m == 0:
        return copy_state(state)

    W = compile_imp(H)
    up_src, up_dst = channel_arrays(W.with_tag("incidence-up"))
    down_src, down_dst = channel_arrays(W.with_tag("incidence-down"))

    node_msgs = apply_function(psi.get("V"), [Xv], rng)[up_src]
    to_edge = aggregate(node_msgs, up_dst, H.m, aggregators.get("node_to_edge"))
    for_message = aggregate(node_msgs, up_dst, H.m, aggregators.get("edge_message"))

    new_edges = apply_function(phi.get("E"), [Xe, to_edge], rng)
    edge_msgs = apply_function(psi.get("E"), [Xe, for_message], rng)
    to_node = aggregate(edge_msgs[down_src], down_dst, H.n, aggregators.get("edge_to_node"))
    new_nodes = apply_function(phi.get("V"), [Xv, to_node], rng)

    out = copy_state(state)
    out["vertex"] = activate(nonlinearity, new_nodes)
    out["hyperedge"] = activate(nonlinearity, new_edges)
    return out


# ----------------------------------------------------------------------------
# Hypergraph convolution and attention
# ----------------------------------------------------------------------------


def hgconv_preactivation(H, state: ModelState, weights=None, theta=None, incidence=None) -> np.ndarray:
    H = _plain_hypergraph(H)
    X = require_class(state, "vertex", H.n)
    B = incidence_matrix(H).values
    attention = None if incidence is None else np.asarray(incidence, dtype=float)
    if attention is not None and attention.shape != B.shape:
        raise ShapeMismatch(f"weighted incidence shape {attention.shape} differs from {B.shape}")
    Theta = square_or_identity(theta, X.shape[1], "hgconv theta")
    if attention is None:
        op = hypergraph_operator(B, weights)
    else:
        op = hypergraph_operator(attention, weights, degrees_from=B)
    return op @ X @ Theta


def hgconv_layer(H, state: ModelState, weights=None, theta=None, nonlinearity: str = "identity") -> ModelState:
    """X' = sigma(D_V^{-1/2} B W D_E^{-1} B^T D_V^{-1/2} X Theta) on the vertex rows."""
    out = copy_state(state)
    out["vertex"] = activate(nonlinearity, hgconv_preactivation(H, state, weights, theta))
    return out


def gcn_reference_operator(G: Graph) -> np.ndarray:
    """1/2 (M + D^{-1/2} A D^{-1/2}) with M the identity on non-isolated vertices."""
    A = G.adjacency_matrix().astype(float)
    deg = A.sum(axis=1)
    D = np.diag(masked_power(deg, -0.5))
    M = np.diag((deg > 0).astype(float))
    return 0.5 * (M + D @ A @ D)


def hat_attention(
    H,
    state: ModelState,
    theta=None,
    sim: str = "inner",
    normalize: str = "hyperedge",
) -> np.ndarray:
    """Attention-weighted incidence.

    Scores leaky_relu(sim(x_v Theta, x_e Theta)) on incident pairs, softmax
    over the competing set: the vertices of each hyperedge ("hyperedge",
    columns sum to 1) or the hyperedges of each vertex ("vertex", rows sum to 1).
    """
    H = _plain_hypergraph(H)
    Xv = require_class(state, "vertex", H.n)
    Xe = require_class(state, "hyperedge", H.m)
    if Xv.shape[1] != Xe.shape[1]:
        raise ShapeMismatch(f"vertex width {Xv.shape[1]} differs from hyperedge width {Xe.shape[1]}")
    B = incidence_matrix(H).values
    rows, cols = np.nonzero(B)
    if len(rows) == 0:
        raise EmptyIncidence("attention needs at least one incidence")

    Theta = square_or_identity(theta, Xv.shape[1], "hat theta")
    Pv, Pe = Xv @ Theta, Xe @ Theta
    if sim == "inner":
        raw = np.einsum("ij,ij->i", Pv[rows], Pe[cols])
    elif sim == "cosine":
        norms = np.linalg.norm(Pv[rows], axis=1) * np.linalg.norm(Pe[cols], axis=1)
        raw = np.where(norms > 0, np.einsum("ij,ij->i", Pv[rows], Pe[cols]) / np.where(norms > 0, norms, 1.0), 0.0)
    else:
        raise InvalidParameter(f"unknown similarity {sim!r}; choose inner or cosine")
    scores = leaky_relu(raw)

    if normalize == "hyperedge":
        alpha = grouped_softmax(scores, cols, H.m)
    elif normalize == "vertex":
        alpha = grouped_softmax(scores, rows, H.n)
    else:
        raise InvalidParameter(f"normalize must be 'hyperedge' or 'vertex', got {normalize!r}")
    B_att = np.zeros_like(B)
    B_att[rows, cols] = alpha
    return B_att


def hat_layer(
    H,
    state: ModelState,
    theta=None,
    weights=None,
    nonlinearity: str = "identity",
    sim: str = "inner",
    normalize: str = "hyperedge",
) -> ModelState:
    """Hypergraph convolution with the attention-weighted incidence in place of B."""
    B_att = hat_attention(H, state, theta, sim, normalize)
    out = copy_state(state)
    out["vertex"] = activate(nonlinearity, hgconv_preactivation(H, state, weights, theta, incidence=B_att))
    return out


# ----------------------------------------------------------------------------
# Node tuples and plain graphs
# ----------------------------------------------------------------------------


def kgnn_layer(
    C: NodeTupleCollection,
    state: ModelState,
    theta1=None,
    theta2=None,
    local: bool = False,
    nonlinearity: str = "identity",
) -> ModelState:
    """x'_v = sigma(x_v Theta1 + sum over down-neighbors u of x_u Theta2)."""
    if not isinstance(C, NodeTupleCollection):
        raise KindMismatch(f"k-GNN layers run on node-tuple collections, not {C.kind}")
    X = require_class(state, "tuple", len(C.tuples))
    T1 = square_or_identity(theta1, X.shape[1], "kgnn theta1")
    T2 = square_or_identity(theta2, X.shape[1], "kgnn theta2")
    if T1.shape != T2.shape:
        raise ShapeMismatch(f"theta1 {T1.shape} and theta2 {T2.shape} differ")
    src, dst = channel_arrays(compile_damp(C, local=local, inclusive=False).channels)
    neighbors = aggregate(X[src], dst, len(C.tuples), "sum")
    out = copy_state(state)
    out["tuple"] = activate(nonlinearity, X @ T1 + neighbors @ T2)
    return out


def graph_mp_layer(
    G: Graph,
    state: ModelState,
    psi: Optional[FunctionSpec] = None,
    phi: Optional[FunctionSpec] = None,
    aggregator: str = "sum",
    nonlinearity: str = "identity",
    rng: Optional[np.random.Generator] = None,
) -> ModelState:
    """x'_v = sigma(phi(x_v, AGG over in-neighbors u of psi(x_v, x_u)))."""
    if not isinstance(G, Graph):
        raise KindMismatch(f"graph message passing runs on plain graphs, not {G.kind}")
    rng = rng or np.random.default_rng(0)
    X = require_class(state, "vertex", G.n)
    src, dst = edge_arrays(G)
    psi = psi or {"kind": "identity"}

    if psi.get("kind") == "attention":
        messages = attention_messages(psi, X[dst], X[src], dst, G.n, rng)
    elif psi.get("kind") == "fixed-scalar":
        deg = np.array([len(G.in_neighbors(v)) for v in range(G.n)], dtype=float)
        out_deg = np.array([G.degree(v) for v in range(G.n)], dtype=float)
        scale = coefficient_rule(psi.get("rule", "one"), out_deg[src], deg[dst])
        messages = apply_function(psi, [X[dst], X[src]], rng, scale=scale)
    else:
        messages = apply_function(psi, [X[dst], X[src]], rng)
    pooled = aggregate(messages, dst, G.n, aggregator)
    out = copy_state(state)
    out["vertex"] = activate(nonlinearity, apply_function(phi, [X, pooled], rng))
    return out


# ----------------------------------------------------------------------------
# Readout
# ----------------------------------------------------------------------------


def pool_rows(X: np.ndarray, kind: str) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if kind == "histogram":
        if X.shape[0] == 0:
            return np.zeros(0)
        order = np.lexsort(X.T[::-1])
        return X[order].reshape(-1)
    if X.shape[0] == 0:
        return np.zeros(X.shape[1])
    if kind == "sum":
        return X.sum(axis=0)
    if kind == "mean":
        return X.mean(axis=0)
    if kind == "max":
        return X.max(axis=0)
    raise InvalidParameter(f"unknown readout {kind!r}; choose from {list(READOUTS)}")


def readout(state: ModelState, kind: str = "sum") -> np.ndarray:
    """Pool every entity class, then concatenate in class order."""
    if not state:
        raise EmptyState("readout needs at least one entity class")
    return np.concatenate([pool_rows(X, kind) for X in state.values()])
