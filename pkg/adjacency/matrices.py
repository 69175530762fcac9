# adjacency/matrices.py
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core.errors import EmptyClass, KindMismatch, ShapeMismatch
from hogdm.queries import p_node_sets
from hogdm.structures import CellComplex, Hypergraph, hyperedge_key


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    """Dense matrix with row/column labels naming the canonical entity order."""

    values: np.ndarray
    rows: Tuple[str, ...]
    cols: Tuple[str, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape


def set_label(members) -> str:
    return "-".join(str(v) for v in sorted(members))


def incidence_matrix(H: Hypergraph) -> LabeledMatrix:
    """B[i][j] = 1 iff vertex i is in hyperedge j (canonical hyperedge order)."""
    B = np.zeros((H.n, H.m), dtype=float)
    for j, e in enumerate(H.hyperedges):
        for v in e:
            B[v, j] = 1.0
    return LabeledMatrix(B, tuple(str(v) for v in range(H.n)), tuple(set_label(e) for e in H.hyperedges))


def boundary_matrix(S: Hypergraph, p: int) -> LabeledMatrix:
    """Unsigned B_p: rows are (p-1)-node-sets, columns p-node-sets."""
    if p < 1:
        raise EmptyClass(f"boundary matrices start at p=1, got {p}")
    cols = sorted(p_node_sets(S, p), key=hyperedge_key)
    if not cols:
        raise EmptyClass(f"no {p}-node-sets in this complex")
    rows = sorted(p_node_sets(S, p - 1), key=hyperedge_key)
    row_index = {r: i for i, r in enumerate(rows)}
    B = np.zeros((len(rows), len(cols)), dtype=float)
    for j, col in enumerate(cols):
        for v in col:
            face = col - {v}
            if face in row_index:
                B[row_index[face], j] = 1.0
    return LabeledMatrix(B, tuple(set_label(r) for r in rows), tuple(set_label(c) for c in cols))


def cell_adjacency_matrix(C: CellComplex) -> LabeledMatrix:
    """A[i][j] = number of cells having both cell i and cell j in their boundary (i != j)."""
    if not isinstance(C, CellComplex):
        raise KindMismatch("cell adjacency needs a cell complex")
    count = len(C.cells)
    A = np.zeros((count, count), dtype=float)
    for c in C.cells:
        members = sorted(C.position[b] for b in c.boundary)
        for a in members:
            for b in members:
                if a != b:
                    A[a, b] += 1.0
    labels = tuple(f"{c.dim}:{c.id}" for c in C.cells)
    return LabeledMatrix(A, labels, labels)


def masked_power(d: np.ndarray, exponent: float) -> np.ndarray:
    """d ** exponent with zero entries mapped to zero instead of inf."""
    d = np.asarray(d, dtype=float)
    out = np.zeros_like(d)
    nz = d > 0
    out[nz] = d[nz] ** exponent
    return out


def hypergraph_operator(
    B: np.ndarray,
    weights: Optional[Sequence[float]] = None,
    degrees_from: Optional[np.ndarray] = None,
) -> np.ndarray:
    """D_V^{-1/2} B W D_E^{-1} B^T D_V^{-1/2} with zero-degree masking.

    degrees_from: incidence used for D_V and D_E when B is an attention-weighted copy.
    """
    n, m = B.shape
    w = np.ones(m) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (m,):
        raise ShapeMismatch(f"expected {m} hyperedge weights, got shape {w.shape}")
    D = B if degrees_from is None else np.asarray(degrees_from, dtype=float)
    if D.shape != B.shape:
        raise ShapeMismatch(f"degree incidence shape {D.shape} differs from {B.shape}")
    dv = D @ w
    de = D.sum(axis=0)
    dv_inv_sqrt = np.diag(masked_power(dv, -0.5))
    de_inv = np.diag(masked_power(de, -1.0))
    return dv_inv_sqrt @ B @ np.diag(w) @ de_inv @ B.T @ dv_inv_sqrt


def symmetric_normalize(M: np.ndarray) -> np.ndarray:
    """D_r^{-1/2} |M| D_c^{-1/2} using row and column sums of |M|."""
    M = np.abs(np.asarray(M, dtype=float))
    if M.size == 0:
        return M
    rows = np.diag(masked_power(M.sum(axis=1), -0.5))
    cols = np.diag(masked_power(M.sum(axis=0), -0.5))
    return rows @ M @ cols
