# core/config.py - Lab configuration

import os
from typing import Dict, Any

from dotenv import load_dotenv

from core.errors import ConfigError


class HOGNNConfig:
    """Configuration for the HOGNN lab."""

    # Budgets (desk-scale caps)
    MAX_ISO_N = 10
    MAX_HO_ISO_N = 8
    MAX_TUPLE_N = 8
    MAX_K = 3
    MAX_MOTIF_SIZE = 5
    MAX_CORPUS_N = 7
    MAX_MULTIHOP_N = 64

    # Lifting
    LIFT_FEATURE_REDUCE = "sum"  # or "mean"
    LIFTED_CLIQUE_K = 3
    LIFTED_CELL_K_IND_CYCLE = 6

    # Adjacency
    EXCLUDE_SELF = True

    # Engine
    HAT_LEAKY_SLOPE = 0.2
    DEFAULT_READOUT = "sum"

    # Run
    DEFAULT_SEED = 0
    TRACE_ENABLED = False

    BUDGET_KEYS = ["MAX_ISO_N", "MAX_HO_ISO_N", "MAX_TUPLE_N", "MAX_CORPUS_N", "MAX_MULTIHOP_N"]

    @classmethod
    def get_config(cls) -> Dict[str, Any]:
        """Get complete configuration dictionary."""
        return {
            "budgets": {
                "max_iso_n": cls.MAX_ISO_N,
                "max_ho_iso_n": cls.MAX_HO_ISO_N,
                "max_tuple_n": cls.MAX_TUPLE_N,
                "max_k": cls.MAX_K,
                "max_motif_size": cls.MAX_MOTIF_SIZE,
                "max_corpus_n": cls.MAX_CORPUS_N,
                "max_multihop_n": cls.MAX_MULTIHOP_N,
            },
            "lifting": {
                "feature_reduce": cls.LIFT_FEATURE_REDUCE,
                "lifted_clique_k": cls.LIFTED_CLIQUE_K,
                "lifted_cell_k_ind_cycle": cls.LIFTED_CELL_K_IND_CYCLE,
            },
            "adjacency": {
                "exclude_self": cls.EXCLUDE_SELF,
            },
            "engine": {
                "hat_leaky_slope": cls.HAT_LEAKY_SLOPE,
                "default_readout": cls.DEFAULT_READOUT,
            },
            "run": {
                "default_seed": cls.DEFAULT_SEED,
                "trace_enabled": cls.TRACE_ENABLED,
            },
        }

    @classmethod
    def update_config(cls, **kwargs):
        """Update configuration values."""
        for key, value in kwargs.items():
            attr = key.upper()
            if not hasattr(cls, attr):
                raise ConfigError(f"Unknown configuration key: {key}")
            setattr(cls, attr, value)

    @classmethod
    def budget_snapshot(cls) -> Dict[str, int]:
        """Current size caps, keyed in lower case."""
        return {key.lower(): getattr(cls, key) for key in cls.BUDGET_KEYS + ["MAX_K"]}


def _env_flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_env_config() -> Dict[str, Any]:
    """Load configuration overrides from the environment (and a .env file)."""
    load_dotenv()
    applied = {}

    override = os.getenv("HOGNN_BUDGET_OVERRIDE")
    if override:
        try:
            cap = int(override)
        except ValueError:
            raise ConfigError(f"HOGNN_BUDGET_OVERRIDE must be an integer, got {override!r}")
        if cap < 1:
            raise ConfigError(f"HOGNN_BUDGET_OVERRIDE must be positive, got {cap}")
        for key in HOGNNConfig.BUDGET_KEYS:
            raised = max(getattr(HOGNNConfig, key), cap)
            setattr(HOGNNConfig, key, raised)
            applied[key] = raised

    trace = os.getenv("HOGNN_TRACE")
    if trace:
        HOGNNConfig.TRACE_ENABLED = _env_flag(trace)
        applied["TRACE_ENABLED"] = HOGNNConfig.TRACE_ENABLED

    seed = os.getenv("HOGNN_SEED")
    if seed:
        try:
            HOGNNConfig.DEFAULT_SEED = int(seed)
        except ValueError:
            raise ConfigError(f"HOGNN_SEED must be an integer, got {seed!r}")
        applied["DEFAULT_SEED"] = HOGNNConfig.DEFAULT_SEED

    reduce = os.getenv("HOGNN_LIFT_REDUCE")
    if reduce:
        if reduce not in ("sum", "mean"):
            raise ConfigError(f"HOGNN_LIFT_REDUCE must be 'sum' or 'mean', got {reduce!r}")
        HOGNNConfig.LIFT_FEATURE_REDUCE = reduce
        applied["LIFT_FEATURE_REDUCE"] = reduce

    return applied
