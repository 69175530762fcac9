# core/trace.py
import json
import os
import sys
from typing import Optional, Dict, Any

from core.config import HOGNNConfig


def is_enabled() -> bool:
    env = os.getenv("HOGNN_TRACE", "")
    return HOGNNConfig.TRACE_ENABLED or env.strip().lower() in ("1", "true", "yes", "on")


def _emit(line: str):
    # stdout carries reports; trace lines go to stderr
    print(line, file=sys.stderr)


def trace(event: str, payload: Optional[Dict[str, Any]] = None):
    if not is_enabled():
        return
    try:
        line = {"event": event, "payload": payload or {}}
        _emit(f"[HOGNN] {json.dumps(line, sort_keys=True, default=str)}")
    except Exception:
        pass


def banner(title: str):
    if not is_enabled():
        return
    _emit("=" * 60)
    _emit(title)
    _emit("=" * 60)


def step(message: str):
    if is_enabled():
        _emit(f"🔧 {message}")


def ok(message: str):
    if is_enabled():
        _emit(f"✅ {message}")


def warn(message: str):
    if is_enabled():
        _emit(f"⚠️ {message}")
