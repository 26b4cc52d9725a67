"""Expected numbers of random moves for Tower of Hanoi puzzle variants."""

from .core import HanoiState, Move, StateGraph, build_graph, corner_state, half_state, legal_moves
from .formulas import expected_moves, pq_closed
from .simulate import SimConfig, SimStats, estimate_cv, simulate
from .solver import EXACT, FLOAT, ExactRational, Float64, PQValues, pq_values, solve_variant
from .variants import VARIANTS, PuzzleVariant

__version__ = "0.1.0"
