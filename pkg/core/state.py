# core/state.py
from typing import TypedDict, Any, Dict, List, Optional

import numpy as np


class FunctionSpec(TypedDict, total=False):
    # --- Kind: identity | project | sum | linear | mlp | fixed-scalar | attention ---
    kind: str
    arg: int  # project: which input to return
    out: int  # output width for linear/mlp
    hidden: int  # hidden width for mlp
    weights: List[List[float]]  # explicit parameters (row-vector convention x @ W)
    bias: List[float]
    weights2: List[List[float]]
    bias2: List[float]
    rule: str  # fixed-scalar: one | mean | sym
    activation: str
    att: List[float]  # attention: scoring vector over [x_dst W, x_src W]


class LayerSpec(TypedDict, total=False):
    # --- Which layer runs ---
    kind: str  # imp | hgconv | hat | bamp | cwn | ccxn | s2cnn | kgnn | graph_mp
    scheme: str  # IMP | BAMP | CWN | DAMP | MULTIHOP | SUBGRAPH

    # --- Message / update functions ---
    psi: Dict[str, FunctionSpec]  # per site, e.g. {"V": ..., "E": ...} or {"boundary": ...}
    phi: Dict[str, FunctionSpec]
    aggregators: Dict[str, str]  # per site: sum | mean | max

    # --- Dense parameters ---
    theta: List[List[float]]
    theta1: List[List[float]]
    theta2: List[List[float]]
    thetas: Dict[str, List[List[float]]]
    weights: List[float]  # hyperedge weights (diagonal W)
    out: int  # output width when parameters are seeded

    # --- Options ---
    relations: List[str]
    local: bool
    normalize: str  # HAT competing set
    nonlinearity: str  # identity | relu | sigmoid | leaky_relu
    seed: int


class ModelSpec(TypedDict, total=False):
    name: str
    flavor: str  # declared flavor, checked against classify_flavor
    layers: List[LayerSpec]
    readout: str  # sum | mean | max | histogram


# Entity class name -> matrix (entities x width), rows in canonical entity order
ModelState = Dict[str, np.ndarray]



class ValidationRecord(TypedDict, total=False):
    entity: str
    message: str


class ExperimentConfig(TypedDict, total=False):
    # --- Command ---
    command: str
    params: Dict[str, Any]

    # --- Reproducibility ---
    seed: int
    budgets: Dict[str, int]

    # --- Output ---
    out: Optional[str]
