"""Frequent subsequence mining on a backtracking constraint kernel."""

from .constraints import LengthBounds, SymbolCardinality
from .database import (
    DatasetError,
    EmptyDatabaseError,
    SequenceDatabase,
    build_database,
    compute_last_positions,
    load_database,
    loads,
    write_plain,
)
from .generate import generate_dataset
from .mining import MiningConfig, MiningResult, RunStats, build_model, mine
from .oracle import OracleConfig, is_subsequence, mine_brute_force
from .propagators import PROPAGATORS
from .regex import PatternDFA, RegexError, compile_regex

__version__ = "0.1.0"

__all__ = [
    "DatasetError",
    "EmptyDatabaseError",
    "LengthBounds",
    "MiningConfig",
    "MiningResult",
    "OracleConfig",
    "PatternDFA",
    "PROPAGATORS",
    "RegexError",
    "RunStats",
    "SequenceDatabase",
    "SymbolCardinality",
    "build_database",
    "build_model",
    "compile_regex",
    "compute_last_positions",
    "generate_dataset",
    "is_subsequence",
    "load_database",
    "loads",
    "mine",
    "mine_brute_force",
    "write_plain",
]
