"""Expected move counts and absorption probabilities from the explicit graph.

These are first-principles solves of the random-walk equations on the state
graph, in exact rational arithmetic or in floating point.  Results are
dense vectors indexed by state code.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import linalg
from .core import StateGraph, build_graph, corner_codes, corner_state, half_state
from .errors import TooLarge
from .variants import PuzzleVariant

MAX_EXACT_DISKS = 6
MAX_FLOAT_DISKS = 12


@dataclass(frozen=True)
class ExactRational:
    limit = MAX_EXACT_DISKS


@dataclass(frozen=True)
class Float64:
    tolerance: float = linalg.DEFAULT_TOLERANCE
    method: str = "direct"  # or "gauss-seidel"
    max_sweeps: int = linalg.DEFAULT_MAX_SWEEPS
    limit = MAX_FLOAT_DISKS

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.method not in ("direct", "gauss-seidel"):
            raise ValueError(f"unknown float method {self.method!r}")


NumericMode = Union[ExactRational, Float64]
EXACT = ExactRational()
FLOAT = Float64()

Number = Union[Fraction, float]


@dataclass(frozen=True)
class PQValues:
    """Final-peg probabilities of the ``1toA`` (p) and ``halfToA`` (q) puzzles."""

    p1: Number
    p2: Number
    q1: Number
    q2: Number
    q3: Number

    def as_dict(self) -> dict[str, Number]:
        return {k: getattr(self, k) for k in ("p1", "p2", "q1", "q2", "q3")}


def check_size(n: int, mode: NumericMode) -> None:
    if n > mode.limit:
        what = "exact-rational" if isinstance(mode, ExactRational) else "float64"
        raise TooLarge(n, mode.limit, f"{what} solver")


def _solve(g: StateGraph, boundary: set[int], rhs_of, ncol: int, mode: NumericMode):
    """Solve the Dirichlet system; returns per-column dense vectors over all codes."""
    unknowns, row = linalg.unknown_index(g, boundary)
    if isinstance(mode, ExactRational):
        rows = linalg.dirichlet_matrix_rows(g, row, unknowns)
        rhs = [rhs_of(v) for v in unknowns.tolist()]
        x = linalg.sparse_exact_solve(rows, rhs) if rows else []
        return [[None if row[v] < 0 else x[row[v]][c] for v in range(g.num_vertices)]
                for c in range(ncol)]
    matrix = linalg.dirichlet_matrix(g, row, unknowns)
    rhs = np.array([rhs_of(v) for v in unknowns.tolist()], dtype=float).reshape(-1, ncol)
    if unknowns.size == 0:
        x = rhs
    elif mode.method == "direct":
        x = linalg.direct_solve(matrix, rhs)
    else:
        x = linalg.gauss_seidel(matrix, rhs, mode.tolerance, mode.max_sweeps)
    out = []
    for c in range(ncol):
        col = np.full(g.num_vertices, np.nan)
        col[unknowns] = x[:, c]
        out.append(col)
    return out


def hitting_times(g: StateGraph, targets: Iterable[int], mode: NumericMode = EXACT):
    """Expected number of random moves from each state until ``targets`` is hit.

    Returns a list of Fractions (exact mode) or a float array, indexed by code.
    """
    check_size(g.n, mode)
    targets = set(int(t) for t in targets)
    if not targets:
        raise ValueError("targets must be nonempty")
    deg = g.degrees()
    (h,) = _solve(g, targets, lambda v: [int(deg[v])], 1, mode)
    zero = Fraction(0) if isinstance(mode, ExactRational) else 0.0
    for t in targets:
        h[t] = zero
    return h


def absorption_probabilities(g: StateGraph, absorbing: Iterable[int], mode: NumericMode = EXACT):
    """Probability of reaching each absorbing state before the others.

    Returns ``{a: vector}`` where ``vector[v]`` is the probability that the
    walk started at v is absorbed at a.
    """
    check_size(g.n, mode)
    absorbing = sorted(set(int(a) for a in absorbing))
    if not absorbing:
        raise ValueError("absorbing set must be nonempty")
    col = {a: c for c, a in enumerate(absorbing)}

    def rhs_of(v):
        r = [0] * len(absorbing)
        for u in g.neighbors(v):
            if u in col:
                r[col[u]] += 1
        return r

    phi = _solve(g, set(absorbing), rhs_of, len(absorbing), mode)
    one, zero = (Fraction(1), Fraction(0)) if isinstance(mode, ExactRational) else (1.0, 0.0)
    for a, vec in zip(absorbing, phi):
        for b in absorbing:
            vec[b] = one if a == b else zero
    return dict(zip(absorbing, phi))


def _mean(values, mode: NumericMode):
    if isinstance(mode, ExactRational):
        return sum(values, Fraction(0)) / len(values)
    return float(np.mean(values))


def solve_variant(n: int, variant: PuzzleVariant, mode: NumericMode = EXACT) -> Number:
    """Expected number of random moves to solve ``variant`` with n disks."""
    check_size(n, mode)
    g = build_graph(n)
    if variant.target_peg is None:
        targets = corner_codes(n)
    else:
        targets = (corner_state(n, variant.target_peg).code,)
    h = hitting_times(g, targets, mode)
    if variant.random_start:
        return _mean(h, mode)
    if variant.start == "half":
        return h[half_state(n).code]
    start = corner_state(n, 1).code
    if variant.min_moves:
        # condition on the first move
        return 1 + _mean([h[u] for u in g.neighbors(start)], mode)
    return h[start]


def pq_values(n: int, mode: NumericMode = EXACT) -> PQValues:
    check_size(n, mode)
    g = build_graph(n)
    corners = corner_codes(n)
    phi = absorption_probabilities(g, corners, mode)
    first = g.neighbors(corners[0])
    p = [_mean([phi[c][u] for u in first], mode) for c in corners]
    half = half_state(n).code
    q = [phi[c][half] for c in corners]
    return PQValues(p1=p[0], p2=p[1], q1=q[0], q2=q[1], q3=q[2])

