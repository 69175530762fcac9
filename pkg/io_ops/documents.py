# io_ops/documents.py
"""
HOGDM documents: JSON text with sorted keys and canonical entity order,
so that dumping the same structure twice yields identical bytes. Also
the plain edge-list format ("n m" header, one "u v" line per edge) with
an optional comma-separated feature file.
"""

import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from core.errors import DocumentError, HOGNNError
from core.graph import Graph, build_graph
from hogdm.structures import (
    CellComplex,
    HOStructure,
    Hypergraph,
    MotifGraph,
    NestedGraph,
    NodeTupleCollection,
    SubgraphCollection,
    SubgraphCountGraph,
    build_cell_complex,
    build_hypergraph,
    build_motif_graph,
    build_nested_graph,
    build_node_tuple_collection,
    build_simplicial_complex,
    build_subgraph,
    build_subgraph_collection,
)

KINDS = ("graph", "hypergraph", "sc", "cc", "ntcol", "scol", "motif", "scnt", "nested")


def _rows(block) -> Optional[List[List[float]]]:
    return [list(row) for row in block] if block is not None else None


def _features(**blocks) -> Dict[str, Any]:
    return {name: _rows(block) for name, block in blocks.items() if block is not None}


# ----------------------------------------------------------------------------
# Structure -> document
# ----------------------------------------------------------------------------


def to_document(H: HOStructure) -> Dict[str, Any]:
    if isinstance(H, Graph):
        doc = {"kind": "graph", "n": H.n, "directed": H.directed, "edges": [list(e) for e in H.edges]}
        feats = _features(vertex=H.features, edge=H.edge_features)
    elif isinstance(H, Hypergraph):
        doc = {"kind": H.kind, "n": H.n, "hyperedges": [sorted(e) for e in H.hyperedges]}
        feats = _features(vertex=H.vertex_features, hyperedge=H.hyperedge_features)
    elif isinstance(H, CellComplex):
        doc = {
            "kind": "cc",
            "cells": [{"id": c.id, "dim": c.dim, "boundary": sorted(c.boundary)} for c in H.cells],
        }
        feats = _features(cell=H.features)
    elif isinstance(H, NodeTupleCollection):
        doc = {"kind": "ntcol", "base": to_document(H.base), "k_max": H.k_max, "tuples": [list(t) for t in H.tuples]}
        feats = _features(tuple=H.tuple_features)
    elif isinstance(H, SubgraphCollection):
        doc = {
            "kind": "scol",
            "base": to_document(H.base),
            "ordered": H.ordered,
            "subgraphs": [
                {"vertices": list(s.vertices), "edges": [list(e) for e in s.edges], "anchor": s.anchor}
                for s in H.subgraphs
            ],
        }
        feats = _features(subgraph=H.subgraph_features)
    elif isinstance(H, MotifGraph):
        doc = {
            "kind": "motif",
            "base": to_document(H.base),
            "motifs": [to_document(m) for m in H.motifs],
            "weights": [[list(row) for row in W] for W in H.weights],
        }
        feats = {}
    elif isinstance(H, SubgraphCountGraph):
        doc = {
            "kind": "scnt",
            "base": to_document(H.base),
            "motifs": [to_document(m) for m in H.motifs],
            "vertex_counts": [list(row) for row in H.vertex_counts],
        }
        if H.edge_counts is not None:
            doc["edge_counts"] = [list(row) for row in H.edge_counts]
        feats = {}
    elif isinstance(H, NestedGraph):
        doc = {"kind": "nested", "outer": to_document(H.outer), "inner": [to_document(g) for g in H.inner]}
        feats = {}
    else:
        raise DocumentError(f"cannot serialize {type(H).__name__}")
    if feats:
        doc["features"] = feats
    return doc


def dump_document(H: HOStructure) -> str:
    return json.dumps(to_document(H), sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------------
# Document -> structure
# ----------------------------------------------------------------------------


def _graph(doc: Dict[str, Any]) -> Graph:
    feats = doc.get("features", {})
    return build_graph(int(doc["n"]), doc.get("edges", []), feats.get("vertex"), bool(doc.get("directed", False)), feats.get("edge"))


def from_document(doc: Dict[str, Any]) -> HOStructure:
    if not isinstance(doc, dict):
        raise DocumentError("a HOGDM document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}; expected one of {list(KINDS)}")
    feats = doc.get("features", {})
    try:
        if kind == "graph":
            return _graph(doc)
        if kind in ("hypergraph", "sc"):
            build = build_simplicial_complex if kind == "sc" else build_hypergraph
            return build(int(doc["n"]), doc.get("hyperedges", []), feats.get("vertex"), feats.get("hyperedge"))
        if kind == "cc":
            return build_cell_complex(doc.get("cells", []), feats.get("cell"))
        if kind == "ntcol":
            return build_node_tuple_collection(_graph(doc["base"]), doc.get("tuples", []), doc.get("k_max"), feats.get("tuple"))
        if kind == "scol":
            subgraphs = [build_subgraph(s["vertices"], s.get("edges", []), s.get("anchor")) for s in doc.get("subgraphs", [])]
            return build_subgraph_collection(_graph(doc["base"]), subgraphs, bool(doc.get("ordered", False)), feats.get("subgraph"))
        if kind == "motif":
            return build_motif_graph(_graph(doc["base"]), [_graph(m) for m in doc.get("motifs", [])], doc.get("weights", []))
        if kind == "scnt":
            edge_counts = doc.get("edge_counts")
            return SubgraphCountGraph(
                base=_graph(doc["base"]),
                motifs=tuple(_graph(m) for m in doc.get("motifs", [])),
                vertex_counts=tuple(tuple(int(x) for x in row) for row in doc.get("vertex_counts", [])),
                edge_counts=tuple(tuple(int(x) for x in row) for row in edge_counts) if edge_counts is not None else None,
            )
        return build_nested_graph(_graph(doc["outer"]), [_graph(g) for g in doc.get("inner", [])])
    except HOGNNError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"malformed {kind} document: {e}")


def load_document(text: str) -> HOStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not a JSON document: {e}")
    return from_document(doc)


def read_document(path: Union[str, Path]) -> HOStructure:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}")
    if path.suffix.lower() in (".txt", ".edges", ".el"):
        return read_edge_list(text)
    return load_document(text)


def write_document(H: HOStructure, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_document(H), encoding="utf-8")
    return path


# ----------------------------------------------------------------------------
# Edge lists
# ----------------------------------------------------------------------------


def read_features_csv(text: str) -> List[List[float]]:
    if not text.strip():
        return []
    frame = pd.read_csv(io.StringIO(text), header=None, dtype=float)
    return frame.values.tolist()


def read_edge_list(text: str, features_csv: Optional[str] = None) -> Graph:
    """First line "n m", then m lines "u v"."""
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise DocumentError("edge list must start with a 'n m' line")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(parts[0]), int(parts[1])) for parts in lines[1:]]
    except (ValueError, IndexError) as e:
        raise DocumentError(f"malformed edge list: {e}")
    if len(edges) != m:
        raise DocumentError(f"edge list header announces {m} edges, found {len(edges)}")
    features = read_features_csv(features_csv) if features_csv is not None else None
    return build_graph(n, edges, features)


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def write_features_csv(G: Graph) -> str:
    if G.features is None:
        return ""
    return pd.DataFrame(G.feature_matrix()).to_csv(index=False, header=False, float_format="%.17g")
