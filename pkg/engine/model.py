# engine/model.py
from typing import List, Optional

import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import KindMismatch, ShapeMismatch, UnknownFunctionKind
from core.graph import Graph
from core.state import LayerSpec, ModelSpec, ModelState
from engine.complexes import bamp_layer, ccxn_layer, cwn_layer, s2cnn_layer
from engine.functions import init_matrix
from engine.layers import graph_mp_layer, hat_layer, hgconv_layer, imp_layer, kgnn_layer, readout
from hogdm.queries import entity_classes
from hogdm.structures import CellComplex, Hypergraph, NodeTupleCollection


def _rows_for(H, refs) -> Optional[List]:
    """Feature rows of the given entities, or None when the structure carries none for them."""
    if isinstance(H, Graph):
        return [H.features[r.id] for r in refs] if H.features is not None else None
    if isinstance(H, Hypergraph):
        rows = []
        for r in refs:
            block = H.vertex_features if r.cls == "vertex" else H.hyperedge_features
            if block is None:
                return None
            rows.append(block[r.id])
        return rows
    if isinstance(H, CellComplex):
        return [H.features[H.position[r.id]] for r in refs] if H.features is not None else None
    if isinstance(H, NodeTupleCollection):
        return [H.tuple_features[r.id] for r in refs] if H.tuple_features is not None else None
    raise KindMismatch(f"no model state for {H.kind} structures")


def initial_state(H, width: Optional[int] = None) -> ModelState:
    """Feature matrix per entity class.

    Classes without features get zeros of the common width; a structure with
    no features at all starts from ones of width 1 (or `width`).
    """
    classes = entity_classes(H)
    rows = {cls: _rows_for(H, refs) for cls, refs in classes.items()}
    widths = {len(r[0]) for r in rows.values() if r}
    if len(widths) > 1:
        raise ShapeMismatch(f"entity classes carry different feature widths {sorted(widths)}")
    featured = any(r is not None for r in rows.values())
    if widths:
        d = widths.pop()
    elif width is not None:
        d = width
    else:
        d = 0 if featured else 1

    state: ModelState = {}
    for cls, refs in classes.items():
        block = rows[cls]
        if block is not None and block:
            state[cls] = np.array(block, dtype=float).reshape(len(refs), d)
        elif featured:
            state[cls] = np.zeros((len(refs), d))
        else:
            state[cls] = np.ones((len(refs), d))
    if isinstance(H, Graph) and not classes:
        state["vertex"] = np.zeros((0, width if width is not None else 1))
    return state


def run_layer(H, state: ModelState, layer: LayerSpec, rng: np.random.Generator) -> ModelState:
    kind = layer.get("kind", "")
    sigma = layer.get("nonlinearity", "identity")
    if kind == "imp":
        return imp_layer(H, state, layer.get("psi"), layer.get("phi"), layer.get("aggregators"), sigma, rng)
    if kind == "hgconv":
        return hgconv_layer(H, state, layer.get("weights"), _theta(layer, state, "vertex", rng), sigma)
    if kind == "hat":
        return hat_layer(H, state, _theta(layer, state, "vertex", rng), layer.get("weights"), sigma,
                         normalize=layer.get("normalize", "hyperedge"))
    if kind == "bamp":
        psi = layer.get("psi")
        return bamp_layer(H, state, layer.get("relations", ["boundary", "coboundary", "upper", "lower"]), psi,
                          (layer.get("phi") or {}).get("update"), layer.get("aggregators"), nonlinearity=sigma, rng=rng)
    if kind == "cwn":
        return cwn_layer(H, state, layer.get("psi"), (layer.get("phi") or {}).get("update"), layer.get("aggregators"), sigma, rng)
    if kind == "ccxn":
        return ccxn_layer(H, state, layer.get("thetas"), sigma)
    if kind == "s2cnn":
        return s2cnn_layer(H, state, layer.get("thetas"), sigma)
    if kind == "kgnn":
        theta1 = _theta(layer, state, "tuple", rng, key="theta1")
        theta2 = _theta(layer, state, "tuple", rng, key="theta2")
        return kgnn_layer(H, state, theta1, theta2, bool(layer.get("local", False)), sigma)
    if kind == "graph_mp":
        psi = (layer.get("psi") or {}).get("message")
        phi = (layer.get("phi") or {}).get("update")
        return graph_mp_layer(H, state, psi, phi, (layer.get("aggregators") or {}).get("message", "sum"), sigma, rng)
    raise UnknownFunctionKind(f"unknown layer kind {kind!r}")


def _theta(layer: LayerSpec, state: ModelState, cls: str, rng, key: str = "theta"):
    """Supplied Theta, a seeded one when the layer asks for `out`, else None (identity)."""
    if layer.get(key) is not None:
        return layer.get(key)
    if "out" not in layer or cls not in state:
        return None
    return init_matrix(rng, state[cls].shape[1], int(layer["out"]))


def run_model(H, spec: ModelSpec, state: Optional[ModelState] = None, seed: Optional[int] = None) -> ModelState:
    """Apply the layer stack in order; layer i draws parameters from generator (seed, i)."""
    seed = HOGNNConfig.DEFAULT_SEED if seed is None else seed
    current = initial_state(H) if state is None else state
    for i, layer in enumerate(spec.get("layers", [])):
        rng = np.random.default_rng([int(layer.get("seed", seed)), i])
        current = run_layer(H, current, layer, rng)
        trace.trace("engine.layer", {"index": i, "kind": layer.get("kind"), "widths": {k: v.shape[1] for k, v in current.items()}})
    return current


def embed(H, spec: ModelSpec, state: Optional[ModelState] = None, seed: Optional[int] = None) -> np.ndarray:
    final = run_model(H, spec, state, seed)
    return readout(final, spec.get("readout", HOGNNConfig.DEFAULT_READOUT))
