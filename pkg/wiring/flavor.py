# wiring/flavor.py
from typing import List

from core.errors import UnknownFunctionKind
from core.state import ModelSpec


class FlavorTag:
    CONVOLUTIONAL = "Convolutional"
    ATTENTIONAL = "Attentional"
    GENERAL = "GeneralMP"


# Coefficient behaviour of each function kind
FIXED_KINDS = {"identity", "project", "sum", "fixed-scalar"}
SCALAR_LEARNABLE_KINDS = {"attention"}
VECTOR_LEARNABLE_KINDS = {"linear", "mlp"}
KNOWN_KINDS = FIXED_KINDS | SCALAR_LEARNABLE_KINDS | VECTOR_LEARNABLE_KINDS

# Layers whose message coefficients are built in rather than declared under psi
IMPLIED_PSI = {
    "hgconv": "fixed-scalar",
    "hat": "attention",
    "ccxn": "fixed-scalar",
    "s2cnn": "fixed-scalar",
    "kgnn": "fixed-scalar",
}
DECLARED_PSI_LAYERS = {"imp", "bamp", "cwn", "graph_mp"}


def message_kinds(spec: ModelSpec) -> List[str]:
    """Kinds of every message (psi) function in the model, in layer order."""
    kinds: List[str] = []
    for layer in spec.get("layers", []):
        layer_kind = layer.get("kind", "")
        if layer_kind in IMPLIED_PSI:
            kinds.append(IMPLIED_PSI[layer_kind])
        elif layer_kind in DECLARED_PSI_LAYERS:
            psi = layer.get("psi") or {}
            kinds.extend(f.get("kind", "identity") for _, f in sorted(psi.items()))
            if not psi:
                kinds.append("identity")
        else:
            raise UnknownFunctionKind(f"unknown layer kind {layer_kind!r}")
        for _, f in sorted((layer.get("phi") or {}).items()):
            if f.get("kind", "identity") not in KNOWN_KINDS:
                raise UnknownFunctionKind(f"unknown update function kind {f.get('kind')!r}")
    return kinds


def classify_flavor(spec: ModelSpec) -> str:
    """Convolutional when every coefficient is fixed, Attentional when learnable
    coefficients stay scalar, GeneralMP when some learnable message is a vector."""
    kinds = message_kinds(spec)
    unknown = [k for k in kinds if k not in KNOWN_KINDS]
    if unknown:
        raise UnknownFunctionKind(f"unknown message function kind {unknown[0]!r}")
    if any(k in VECTOR_LEARNABLE_KINDS for k in kinds):
        return FlavorTag.GENERAL
    if any(k in SCALAR_LEARNABLE_KINDS for k in kinds):
        return FlavorTag.ATTENTIONAL
    return FlavorTag.CONVOLUTIONAL
