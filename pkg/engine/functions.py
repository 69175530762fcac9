# engine/functions.py
"""
Built-in message (psi) and update (phi) functions, aggregators and
nonlinearities. Matrices follow the row-vector convention: a batch of
inputs is an (rows x width) array and parameters multiply on the right.
"""

from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from core.config import HOGNNConfig
from core.errors import InvalidParameter, ShapeMismatch, UnknownFunctionKind
from core.state import FunctionSpec

AGGREGATORS = ("sum", "mean", "max")


# ----------------------------------------------------------------------------
# Nonlinearities
# ----------------------------------------------------------------------------


def leaky_relu(x: np.ndarray, slope: Optional[float] = None) -> np.ndarray:
    slope = HOGNNConfig.HAT_LEAKY_SLOPE if slope is None else slope
    return np.where(x > 0, x, slope * x)


NONLINEARITIES: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda x: x,
    "relu": lambda x: np.maximum(x, 0.0),
    "sigmoid": lambda x: 1.0 / (1.0 + np.exp(-x)),
    "tanh": np.tanh,
    "leaky_relu": leaky_relu,
}


def activate(name: Optional[str], x: np.ndarray) -> np.ndarray:
    name = name or "identity"
    if name not in NONLINEARITIES:
        raise InvalidParameter(f"unknown nonlinearity {name!r}; choose from {sorted(NONLINEARITIES)}")
    return NONLINEARITIES[name](x)


# ----------------------------------------------------------------------------
# Parameters
# ----------------------------------------------------------------------------


def init_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Glorot-uniform initialization."""
    bound = np.sqrt(6.0 / max(rows + cols, 1))
    return rng.uniform(-bound, bound, size=(rows, cols))


def parameter(value, rows: int, cols: int, rng: np.random.Generator, what: str) -> np.ndarray:
    """Supplied matrix (shape-checked) or a seeded fresh one."""
    if value is None:
        return init_matrix(rng, rows, cols)
    M = np.asarray(value, dtype=float)
    if M.ndim == 1 and rows == 1:
        M = M.reshape(1, -1)
    if M.shape != (rows, cols):
        raise ShapeMismatch(f"{what}: expected shape {(rows, cols)}, got {M.shape}")
    return M


def square_or_identity(value, width: int, what: str) -> np.ndarray:
    if value is None:
        return np.eye(width)
    M = np.asarray(value, dtype=float)
    if M.ndim != 2 or M.shape[0] != width:
        raise ShapeMismatch(f"{what}: expected {width} rows, got shape {M.shape}")
    return M


# ----------------------------------------------------------------------------
# Function application
# ----------------------------------------------------------------------------


def _concat(inputs: Sequence[np.ndarray]) -> np.ndarray:
    rows = {x.shape[0] for x in inputs}
    if len(rows) > 1:
        raise ShapeMismatch(f"function inputs disagree on row count: {sorted(rows)}")
    return np.concatenate([np.asarray(x, dtype=float) for x in inputs], axis=1)


def coefficient_rule(rule: str, deg_src: np.ndarray, deg_dst: np.ndarray) -> np.ndarray:
    """Fixed per-channel scalars built from structural degrees only."""
    if rule == "one":
        return np.ones_like(deg_dst, dtype=float)
    if rule == "mean":
        return np.where(deg_dst > 0, 1.0 / np.maximum(deg_dst, 1), 0.0)
    if rule == "sym":
        prod = deg_src * deg_dst
        return np.where(prod > 0, 1.0 / np.sqrt(np.maximum(prod, 1)), 0.0)
    raise InvalidParameter(f"unknown coefficient rule {rule!r}; choose one, mean or sym")


def apply_function(
    fspec: Optional[FunctionSpec],
    inputs: List[np.ndarray],
    rng: np.random.Generator,
    scale: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Evaluate a psi/phi descriptor on a batch of rows.

    identity passes its last argument through; project returns argument `arg`;
    sum adds all arguments; linear and mlp act on the concatenated arguments and keep the
    width of the first argument unless `out` is given;
    fixed-scalar multiplies the last argument by the per-row `scale`.
    """
    fspec = fspec or {"kind": "identity"}
    kind = fspec.get("kind", "identity")

    if kind == "identity":
        return np.asarray(inputs[-1], dtype=float)
    if kind == "project":
        arg = int(fspec.get("arg", len(inputs) - 1))
        if not 0 <= arg < len(inputs):
            raise InvalidParameter(f"project arg {arg} outside the {len(inputs)} inputs")
        return np.asarray(inputs[arg], dtype=float)
    if kind == "sum":
        widths = {x.shape[1] for x in inputs}
        if len(widths) > 1:
            raise ShapeMismatch(f"sum needs equal widths, got {sorted(widths)}")
        return np.sum([np.asarray(x, dtype=float) for x in inputs], axis=0)
    if kind == "fixed-scalar":
        last = np.asarray(inputs[-1], dtype=float)
        if scale is None:
            return last
        return last * np.asarray(scale, dtype=float).reshape(-1, 1)
    if kind == "linear":
        X = _concat(inputs)
        out = int(fspec.get("out", inputs[0].shape[1]))
        W = parameter(fspec.get("weights"), X.shape[1], out, rng, "linear weights")
        b = np.asarray(fspec.get("bias", np.zeros(out)), dtype=float)
        return activate(fspec.get("activation"), X @ W + b)
    if kind == "mlp":
        X = _concat(inputs)
        hidden = int(fspec.get("hidden", X.shape[1]))
        out = int(fspec.get("out", inputs[0].shape[1]))
        W1 = parameter(fspec.get("weights"), X.shape[1], hidden, rng, "mlp first layer")
        b1 = np.asarray(fspec.get("bias", np.zeros(hidden)), dtype=float)
        W2 = parameter(fspec.get("weights2"), hidden, out, rng, "mlp second layer")
        b2 = np.asarray(fspec.get("bias2", np.zeros(out)), dtype=float)
        return activate(fspec.get("activation", "relu"), X @ W1 + b1) @ W2 + b2
    if kind == "attention":
        raise InvalidParameter("attention functions need channel grouping; use attention_messages")
    raise UnknownFunctionKind(f"unknown function kind {kind!r}")


def grouped_softmax(scores: np.ndarray, groups: np.ndarray, count: int) -> np.ndarray:
    """Softmax of scores within each group id (numerically stable)."""
    scores = np.asarray(scores, dtype=float)
    top = np.full(count, -np.inf)
    np.maximum.at(top, groups, scores)
    e = np.exp(scores - top[groups])
    denom = np.zeros(count)
    np.add.at(denom, groups, e)
    return e / denom[groups]


def attention_messages(
    fspec: FunctionSpec,
    x_dst: np.ndarray,
    x_src: np.ndarray,
    dst_index: np.ndarray,
    count: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """alpha * (x_src W) with alpha a softmax over each destination's incoming channels."""
    d = x_src.shape[1]
    out = int(fspec.get("out", d))
    W = parameter(fspec.get("weights"), d, out, rng, "attention projection")
    a = parameter(fspec.get("att"), 1, 2 * out, rng, "attention vector").reshape(-1)
    P_dst, P_src = x_dst @ W, x_src @ W
    if len(dst_index) == 0:
        return np.zeros((0, out))
    scores = leaky_relu(np.concatenate([P_dst, P_src], axis=1) @ a)
    alpha = grouped_softmax(scores, dst_index, count)
    return alpha.reshape(-1, 1) * P_src


# ----------------------------------------------------------------------------
# Aggregation
# ----------------------------------------------------------------------------


def aggregate(messages: np.ndarray, index: np.ndarray, count: int, how: Optional[str] = "sum") -> np.ndarray:
    """Reduce message rows into `count` destination rows; destinations with no messages get zeros.

    Rows are reduced in their given (canonical) order.
    """
    how = how or "sum"
    if how not in AGGREGATORS:
        raise InvalidParameter(f"unknown aggregator {how!r}; choose from {list(AGGREGATORS)}")
    messages = np.asarray(messages, dtype=float)
    width = messages.shape[1] if messages.ndim == 2 else 0
    index = np.asarray(index, dtype=np.int64)
    out = np.zeros((count, width))
    if len(index) == 0:
        return out
    if how == "max":
        out[:] = -np.inf
        np.maximum.at(out, index, messages)
        out[np.isneginf(out)] = 0.0
        return out
    np.add.at(out, index, messages)
    if how == "mean":
        hits = np.bincount(index, minlength=count).astype(float)
        out = np.where(hits[:, None] > 0, out / np.maximum(hits, 1.0)[:, None], 0.0)
    return out
