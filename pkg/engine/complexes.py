# engine/complexes.py
"""
Layers over simplicial and cell complexes: boundary-adjacency message
passing (with its cellular restriction) and the matrix-form CCXN and
S2CNN updates.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import KindMismatch, ShapeMismatch
from core.state import FunctionSpec, ModelState
from adjacency.matrices import boundary_matrix, cell_adjacency_matrix, masked_power, symmetric_normalize
from engine.functions import activate, aggregate, apply_function, attention_messages, coefficient_rule, square_or_identity
from engine.layers import copy_state, require_class
from hogdm.queries import entity_classes
from hogdm.structures import CellComplex, EntityRef, Hypergraph, SimplicialComplex
from wiring.channels import RELATIONS, WiringSet, compile_bamp, compile_cwn


def stack_state(S, state: ModelState) -> Tuple[np.ndarray, List[Tuple[str, int]], Dict[EntityRef, int]]:
    """All entity rows in one matrix, classes in canonical order; returns (X, [(class, rows)], index)."""
    blocks, layout, index = [], [], {}
    for cls, refs in entity_classes(S).items():
        X = require_class(state, cls, len(refs))
        for ref in refs:
            index[ref] = len(index)
        blocks.append(X)
        layout.append((cls, len(refs)))
    widths = {X.shape[1] for X in blocks}
    if len(widths) > 1:
        raise ShapeMismatch(f"message passing across classes needs one width, got {sorted(widths)}")
    return np.vstack(blocks), layout, index


def unstack_state(state: ModelState, Y: np.ndarray, layout: Sequence[Tuple[str, int]]) -> ModelState:
    out = copy_state(state)
    offset = 0
    for cls, rows in layout:
        out[cls] = Y[offset:offset + rows]
        offset += rows
    return out


def bamp_layer(
    S,
    state: ModelState,
    relations: Sequence[str] = ("boundary", "coboundary", "upper", "lower"),
    psi: Optional[Dict[str, FunctionSpec]] = None,
    phi: Optional[FunctionSpec] = None,
    aggregators: Optional[Dict[str, str]] = None,
    restrict_to=None,
    nonlinearity: str = "identity",
    rng: Optional[np.random.Generator] = None,
    wiring: Optional[WiringSet] = None,
) -> ModelState:
    """x'_c = phi(x_c, m_boundary, m_coboundary, m_upper, m_lower) over the selected relations.

    psi for boundary/coboundary receives (x_c, x_b); for upper/lower it
    receives (x_c, x_d, x_via). phi defaults to the sum of its inputs.
    """
    if not isinstance(S, (Hypergraph, CellComplex)):
        raise KindMismatch(f"boundary message passing needs a complex, not {S.kind}")
    psi, aggregators = psi or {}, aggregators or {}
    phi = phi or {"kind": "sum"}
    rng = rng or np.random.default_rng(0)
    W = wiring if wiring is not None else compile_bamp(S, relations, restrict_to)
    if len(W) == 0:
        return copy_state(state)

    X, layout, index = stack_state(S, state)
    count = X.shape[0]
    selected = [r for r in RELATIONS if r in set(relations)]
    inputs = [X]
    for rel in selected:
        chans = W.with_tag(rel)
        src = np.array([index[c.src] for c in chans], dtype=np.int64)
        dst = np.array([index[c.dst] for c in chans], dtype=np.int64)
        args = [X[dst], X[src]]
        if rel in ("upper", "lower"):
            args.append(X[np.array([index[c.via] for c in chans], dtype=np.int64)])

        fspec = psi.get(rel) or {"kind": "project", "arg": 1}
        if fspec.get("kind") == "attention":
            msgs = attention_messages(fspec, X[dst], X[src], dst, count, rng)
        elif fspec.get("kind") == "fixed-scalar":
            deg = np.bincount(dst, minlength=count).astype(float)
            msgs = apply_function(fspec, [X[src]], rng, scale=coefficient_rule(fspec.get("rule", "one"), deg[src], deg[dst]))
        else:
            msgs = apply_function(fspec, args, rng)
        inputs.append(aggregate(msgs, dst, count, aggregators.get(rel)))

    Y = activate(nonlinearity, apply_function(phi, inputs, rng))
    return unstack_state(state, Y, layout)


def cwn_layer(
    C: CellComplex,
    state: ModelState,
    psi: Optional[Dict[str, FunctionSpec]] = None,
    phi: Optional[FunctionSpec] = None,
    aggregators: Optional[Dict[str, str]] = None,
    nonlinearity: str = "identity",
    rng: Optional[np.random.Generator] = None,
) -> ModelState:
    """Cellular update from boundary and upper messages only."""
    if not isinstance(C, CellComplex):
        raise KindMismatch(f"cellular layers run on cell complexes, not {C.kind}")
    return bamp_layer(
        C, state, ("boundary", "upper"), psi, phi, aggregators,
        nonlinearity=nonlinearity, rng=rng, wiring=compile_cwn(C),
    )


def _face_incidence(C: CellComplex, lower: int, upper: int) -> np.ndarray:
    low = [c.id for c in C.cells_of_dim(lower)]
    high = C.cells_of_dim(upper)
    row = {cid: i for i, cid in enumerate(low)}
    B = np.zeros((len(low), len(high)))
    for j, c in enumerate(high):
        for b in c.boundary:
            if b in row:
                B[row[b], j] = 1.0
    return B


def ccxn_layer(C: CellComplex, state: ModelState, thetas: Optional[Dict[str, list]] = None, nonlinearity: str = "identity") -> ModelState:
    """Vertex convolution x0' = sigma(A_hat x0 T0) with A_hat = I + D^{-1/2} A D^{-1/2},
    and edge-to-face convolution x2' = sigma(norm(B2)^T x1 T12); edges pass through."""
    if not isinstance(C, CellComplex):
        raise KindMismatch(f"CCXN layers run on cell complexes, not {C.kind}")
    thetas = thetas or {}
    out = copy_state(state)

    vertices = C.cells_of_dim(0)
    if vertices:
        X0 = require_class(state, "cell_0", len(vertices))
        A = cell_adjacency_matrix(C).values[: len(vertices), : len(vertices)]
        D = np.diag(masked_power(A.sum(axis=1), -0.5))
        A_hat = np.eye(len(vertices)) + D @ A @ D
        out["cell_0"] = activate(nonlinearity, A_hat @ X0 @ square_or_identity(thetas.get("0"), X0.shape[1], "theta 0"))

    edges, faces = C.cells_of_dim(1), C.cells_of_dim(2)
    if edges and faces:
        X1 = require_class(state, "cell_1", len(edges))
        require_class(state, "cell_2", len(faces))
        B2 = symmetric_normalize(_face_incidence(C, 1, 2))
        out["cell_2"] = activate(nonlinearity, B2.T @ X1 @ square_or_identity(thetas.get("12"), X1.shape[1], "theta 12"))
    return out


def s2cnn_layer(S: SimplicialComplex, state: ModelState, thetas: Optional[Dict[str, list]] = None, nonlinearity: str = "identity") -> ModelState:
    """Block update over dimensions 0..2 with normalized B1, B2 and their Gram products.

    x0' = L0 x0 T00 + B1 x1 T10
    x1' = B1^T x0 T01 + L1 x1 T11 + B2 x2 T21
    x2' = B2^T x1 T12 + L2 x2 T22
    with L0 = B1 B1^T, L1 = B1^T B1 + B2 B2^T, L2 = B2^T B2, all symmetrically normalized.
    Higher dimensions pass through unchanged.
    """
    if not isinstance(S, SimplicialComplex):
        raise KindMismatch(f"S2CNN layers run on simplicial complexes, not {S.kind}")
    thetas = thetas or {}
    classes = entity_classes(S)
    X = {p: require_class(state, f"simplex_{p}", len(classes[f"simplex_{p}"])) for p in range(3) if f"simplex_{p}" in classes}
    B = {p: boundary_matrix(S, p).values for p in (1, 2) if p in X and p - 1 in X}

    def theta(key: str, width: int) -> np.ndarray:
        return square_or_identity(thetas.get(key), width, f"theta {key}")

    def gram(p: int) -> np.ndarray:
        size = X[p].shape[0]
        L = np.zeros((size, size))
        if p in B:
            L += B[p].T @ B[p]
        if p + 1 in B:
            L += B[p + 1] @ B[p + 1].T
        return symmetric_normalize(L)

    out = copy_state(state)
    for p in X:
        total = gram(p) @ X[p] @ theta(f"{p}{p}", X[p].shape[1])
        if p + 1 in B:
            total = total + symmetric_normalize(B[p + 1]) @ X[p + 1] @ theta(f"{p + 1}{p}", X[p + 1].shape[1])
        if p in B:
            total = total + symmetric_normalize(B[p]).T @ X[p - 1] @ theta(f"{p - 1}{p}", X[p - 1].shape[1])
        out[f"simplex_{p}"] = activate(nonlinearity, total)
    return out
