# io_ops/reports.py
"""
Comma-separated reports. Every report starts with a "# seed=<S>" line
followed by a fixed header row; floats are written with round-trip
precision so repeated runs produce identical bytes.
"""

import io
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np
import pandas as pd

from core.errors import DocumentError
from adjacency.matrices import LabeledMatrix
from wiring.channels import WiringSet

CHANNEL_COLUMNS = ["src", "dst", "tag", "via", "slot", "weight"]
COUNT_COLUMNS = ["tag", "count"]


def to_csv_text(frame: pd.DataFrame, seed: Optional[int] = None, index: bool = False) -> str:
    body = frame.to_csv(index=index, lineterminator="\n", float_format="%.17g")
    if seed is None:
        return body
    return f"# seed={seed}\n{body}"


def emit(text: str, out: Optional[Union[str, Path]] = None) -> Optional[Path]:
    """Write to `out`, or to stdout when no path is given."""
    if out is None:
        sys.stdout.write(text)
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def write_report(frame: pd.DataFrame, out: Optional[Union[str, Path]] = None, seed: Optional[int] = None) -> Optional[Path]:
    return emit(to_csv_text(frame, seed), out)


def read_report(text: str) -> pd.DataFrame:
    """Inverse of to_csv_text (the seed line is a comment)."""
    try:
        return pd.read_csv(io.StringIO(text), comment="#")
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DocumentError(f"cannot parse report: {e}")


# ----------------------------------------------------------------------------
# Frames
# ----------------------------------------------------------------------------


def channel_row(channel) -> Dict[str, Any]:
    return {
        "src": str(channel.src),
        "dst": str(channel.dst),
        "tag": channel.tag,
        "via": str(channel.via) if channel.via is not None else "",
        "slot": channel.slot if channel.slot is not None else -1,
        "weight": channel.weight,
    }


def channels_frame(W: WiringSet) -> pd.DataFrame:
    return pd.DataFrame([channel_row(c) for c in W.channels], columns=CHANNEL_COLUMNS)


def count_frame(counts: Dict[str, int]) -> pd.DataFrame:
    """Per-tag rows in tag order plus a final total row."""
    rows = [{"tag": tag, "count": int(n)} for tag, n in sorted(counts.items())]
    rows.append({"tag": "total", "count": int(sum(counts.values()))})
    return pd.DataFrame(rows, columns=COUNT_COLUMNS)


def counts_from_channels(frame: pd.DataFrame) -> Dict[str, int]:
    if "tag" not in frame.columns:
        raise DocumentError("channel table has no 'tag' column")
    return {str(tag): int(n) for tag, n in frame["tag"].value_counts().sort_index().items()}


def matrix_frame(M: LabeledMatrix) -> pd.DataFrame:
    """Dense matrix with an `entity` column naming the row order and columns naming the column order."""
    frame = pd.DataFrame(np.asarray(M.values), columns=list(M.cols))
    frame.insert(0, "entity", list(M.rows))
    return frame


def embedding_frame(vector: np.ndarray) -> pd.DataFrame:
    vector = np.asarray(vector, dtype=float).reshape(-1)
    return pd.DataFrame({"index": np.arange(len(vector)), "value": vector})


def state_frame(state: Dict[str, np.ndarray]) -> pd.DataFrame:
    """Long-format model state: one row per (class, entity row, column)."""
    rows: List[Dict[str, Any]] = []
    for cls in sorted(state):
        X = np.asarray(state[cls], dtype=float)
        for i in range(X.shape[0]):
            for j in range(X.shape[1] if X.ndim == 2 else 0):
                rows.append({"class": cls, "row": i, "column": j, "value": float(X[i, j])})
    return pd.DataFrame(rows, columns=["class", "row", "column", "value"])


def records_frame(records: Iterable[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=columns)
