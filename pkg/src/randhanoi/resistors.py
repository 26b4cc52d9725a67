"""Electrical-network route to the corner-to-corner hitting time.

With a 1-ohm resistor on every edge of the state graph, the three corners
of the n-disk gasket behave like a wye with a common arm resistance R(n).
Gluing three such wyes with unit bridges leaves a delta of (2R+1)-ohm edges
between the wye centres; one delta-to-wye step then gives R(n+1).  The
commute theorem turns the corner-to-corner resistance into a hitting time.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from . import linalg
from .core import StateGraph
from .errors import NonPositiveResistance, SolveFailure, TooLarge
from .formulas import edge_count

Ohms = Union[Fraction, int]

MAX_ORACLE_DISKS = 6


class DeltaEdges(NamedTuple):
    r_ab: Ohms
    r_ac: Ohms
    r_bc: Ohms


class WyeArms(NamedTuple):
    r_a: Ohms
    r_b: Ohms
    r_c: Ohms


class WyeResistance(NamedTuple):
    n: int
    R: Fraction


def delta_to_wye(d: DeltaEdges) -> WyeArms:
    r_ab, r_ac, r_bc = (Fraction(r) for r in d)
    if min(r_ab, r_ac, r_bc) <= 0:
        raise NonPositiveResistance(f"delta resistances must be positive: {tuple(d)}")
    s = r_ab + r_ac + r_bc
    return WyeArms(r_ab * r_ac / s, r_ab * r_bc / s, r_ac * r_bc / s)


def delta_pair_resistances(d: DeltaEdges) -> tuple[Fraction, Fraction, Fraction]:
    """Two-terminal (R_AB, R_AC, R_BC) of a delta: one edge parallel to the other two."""
    r_ab, r_ac, r_bc = (Fraction(r) for r in d)
    s = r_ab + r_ac + r_bc
    return r_ab * (r_ac + r_bc) / s, r_ac * (r_ab + r_bc) / s, r_bc * (r_ab + r_ac) / s


def wye_pair_resistances(w: WyeArms) -> tuple[Fraction, Fraction, Fraction]:
    r_a, r_b, r_c = (Fraction(r) for r in w)
    return r_a + r_b, r_a + r_c, r_b + r_c


def reduce_gasket(n: int) -> WyeResistance:
    """Wye arm resistance R(n) by repeated delta-to-wye reduction from R(1) = 1/3."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    R = delta_to_wye(DeltaEdges(1, 1, 1)).r_a
    for _ in range(n - 1):
        # centres of the three sub-gaskets form a delta: arm, bridge, arm
        side = 2 * R + 1
        R = R + delta_to_wye(DeltaEdges(side, side, side)).r_a
    return WyeResistance(n, R)


def corner_resistance(n: int) -> Fraction:
    return 2 * reduce_gasket(n).R


def commute_time(n: int) -> Fraction:
    """Expected round trip between two corners: 2 * edges * resistance."""
    return 2 * edge_count(n) * corner_resistance(n)


def one_way_time(n: int) -> Fraction:
    """Half the corner commute time; valid because the corners are symmetric."""
    return commute_time(n) / 2


def effective_resistance_oracle(g: StateGraph, u: int, v: int, exact: bool = False):
    """Resistance between u and v from a grounded Laplacian solve on the graph.

    Injects a unit current at u with v held at potential 0 and returns the
    potential at u.  Float by default; ``exact=True`` gives a Fraction.
    """
    if u == v:
        raise ValueError("u and v must differ")
    if g.n > MAX_ORACLE_DISKS:
        raise TooLarge(g.n, MAX_ORACLE_DISKS, "resistance oracle")
    unknowns, row = linalg.unknown_index(g, [v])
    if exact:
        rows = linalg.dirichlet_matrix_rows(g, row, unknowns)
        rhs = [[1 if w == u else 0] for w in unknowns.tolist()]
        return linalg.sparse_exact_solve(rows, rhs)[row[u]][0]
    matrix = linalg.dirichlet_matrix(g, row, unknowns)
    rhs = np.zeros(unknowns.size)
    rhs[row[u]] = 1.0
    x = linalg.direct_solve(matrix, rhs)
    r = float(x[row[u]])
    if not r > 0:
        raise SolveFailure(f"non-positive resistance {r}")
    return r
