"""Permutation and dihedral charts for folded branched covers of the sphere."""

from .chart import Chart, ChartError, Event, parse, serialize, validate
from .cover import cover_invariants, sheet_trace_oracle
from .moves import MoveInstance, apply_move, verify_sequence

__all__ = ["Chart", "ChartError", "Event", "MoveInstance", "apply_move", "cover_invariants", "parse",
           "serialize", "sheet_trace_oracle", "validate", "verify_sequence"]
__version__ = "0.1.0"
