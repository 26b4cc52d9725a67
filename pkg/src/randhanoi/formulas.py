"""Closed-form expectations, final-peg probabilities and their identities.

All arithmetic is exact (``int`` / ``Fraction``); nothing here touches floats.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .solver import PQValues
from .variants import PuzzleVariant


def _require(n: int, lo: int) -> None:
    if not isinstance(n, int) or n < lo:
        raise ValueError(f"n must be an integer >= {lo}, got {n!r}")


def e_r_to_a(n: int) -> Fraction:
    """Random start, finish on any single peg."""
    _require(n, 0)
    return Fraction(5**n - 2 * 3**n + 1, 4)


def e_1_to_3(n: int) -> Fraction:
    _require(n, 1)
    return Fraction((3**n - 1) * (5**n - 3**n), 2 * 3 ** (n - 1))


def e_1_to_a(n: int) -> Fraction:
    """All disks on peg 1, at least one move, finish on any single peg."""
    _require(n, 1)
    return Fraction(3**n - 1, 2)


def e_half_to_a(n: int) -> Fraction:
    _require(n, 1)
    return Fraction(3 * (5 ** (n - 1) - 3 ** (n - 1)), 2)


def e_r_to_1(n: int) -> Fraction:
    _require(n, 1)
    return Fraction(5 ** (n + 1) - 2 * 3 ** (n + 1) + 5, 4) - Fraction(5, 3) ** n


def e_r_to_1_single_fraction(n: int) -> Fraction:
    """Same value as :func:`e_r_to_1`, from the single-fraction form."""
    _require(n, 1)
    num = (3**n - 1) * (5 ** (n + 1) - 2 * 3 ** (n + 1)) + 5**n - 3**n
    return Fraction(num, 4 * 3**n)


def q1_closed(n: int) -> Fraction:
    _require(n, 1)
    return Fraction(5 ** (n - 1) - 3 ** (n - 1), 5**n - 3**n)


def q1_recurrence(n: int) -> Fraction:
    """q1(n) = 1 / (8 - 15 q1(n-1)), iterated from q1(1) = 0."""
    _require(n, 1)
    q = Fraction(0)
    for _ in range(n - 1):
        q = 1 / (8 - 15 * q)
    return q


def pq_closed(n: int) -> PQValues:
    _require(n, 1)
    q1 = q1_closed(n)
    p1 = 5 * q1
    return PQValues(
        p1=p1,
        p2=(1 - p1) / 2,
        q1=q1,
        q2=Fraction(2 * 5 ** (n - 1), 5**n - 3**n),
        q3=2 * q1,
    )


def min_moves(n: int) -> int:
    _require(n, 0)
    return 2**n - 1


# -- electrical-route quantities, kept here so every formula has one home ----


def wye_arm(n: int) -> Fraction:
    """Common arm resistance of the reduced wye for the n-disk gasket."""
    _require(n, 1)
    return Fraction(5**n - 3**n, 2 * 3**n)


def edge_count(n: int) -> int:
    _require(n, 0)
    return 3 * (3**n - 1) // 2


def one_way_from_resistance(n: int) -> Fraction:
    """m_n * 2R(n), the corner-to-corner hitting time via the commute theorem."""
    return edge_count(n) * 2 * wye_arm(n)


E_FORMULAS: dict[PuzzleVariant, Callable[[int], Fraction]] = {
    PuzzleVariant.RANDOM_TO_ANY: e_r_to_a,
    PuzzleVariant.ONE_TO_THREE: e_1_to_3,
    PuzzleVariant.ONE_TO_ANY: e_1_to_a,
    PuzzleVariant.HALF_TO_ANY: e_half_to_a,
    PuzzleVariant.RANDOM_TO_ONE: e_r_to_1,
}


def expected_moves(n: int, variant: PuzzleVariant) -> Fraction:
    return E_FORMULAS[variant](n)


class FormulaId(enum.Enum):
    EQ1 = "E_r->a"
    EQ2 = "E_1->3"
    EQ3 = "E_1->a"
    EQ4 = "E_1/2->a"
    EQ5 = "E_r->1"
    EQ7 = "q1 recurrence"
    EQ8 = "q1"
    Q2 = "q2"
    Q3 = "q3"
    P1 = "p1"
    P2 = "p2"
    EQ10 = "R(n) recurrence"
    EQ11 = "R(n)"
    M_N = "m_n"
    EQ12 = "m_n * 2R(n)"


@dataclass(frozen=True)
class FormulaResult:
    formula: FormulaId
    n: int
    value: Fraction


def evaluate(formula: FormulaId, n: int) -> FormulaResult:
    from .resistors import reduce_gasket  # recurrence lives with the network code

    table: dict[FormulaId, Callable[[int], Fraction]] = {
        FormulaId.EQ1: e_r_to_a,
        FormulaId.EQ2: e_1_to_3,
        FormulaId.EQ3: e_1_to_a,
        FormulaId.EQ4: e_half_to_a,
        FormulaId.EQ5: e_r_to_1,
        FormulaId.EQ7: q1_recurrence,
        FormulaId.EQ8: q1_closed,
        FormulaId.Q2: lambda k: pq_closed(k).q2,
        FormulaId.Q3: lambda k: pq_closed(k).q3,
        FormulaId.P1: lambda k: pq_closed(k).p1,
        FormulaId.P2: lambda k: pq_closed(k).p2,
        FormulaId.EQ10: lambda k: reduce_gasket(k).R,
        FormulaId.EQ11: wye_arm,
        FormulaId.M_N: lambda k: Fraction(edge_count(k)),
        FormulaId.EQ12: one_way_from_resistance,
    }
    return FormulaResult(formula, n, Fraction(table[formula](n)))


# -- identities ----------------------------------------------------------------


class IdentityCheck(NamedTuple):
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_lemma_identities(n: int) -> list[IdentityCheck]:
    """Evaluate both sides of every recursive identity at n (n >= 2).

    The identities tie level n to level n-1: the random-start reduction,
    the 1->3 / 1->a ratio, the seven stage-decomposition recursions,
    the half-start expectation in terms of p2(n-1), and the r->1 split.
    """
    _require(n, 2)
    prev, cur = pq_closed(n - 1), pq_closed(n)
    p1, p2 = prev.p1, prev.p2
    e_half = e_half_to_a(n)
    stay = p1 + p2
    checks = [
        ("r->a reduction",
         e_r_to_a(n), e_r_to_a(n - 1) + Fraction(2, 3) * e_half),
        ("1->3 = 1->a / p2",
         e_1_to_3(n), e_1_to_a(n) / cur.p2),
        ("1->a recursion",
         e_1_to_a(n), e_1_to_a(n - 1) + 2 * p2 * e_half),
        ("p1 recursion",
         cur.p1, p1 + 2 * p2 * cur.q2),
        ("p2 recursion",
         cur.p2, p2 * cur.q1 + p2 * cur.q3),
        ("half->a recursion",
         e_half, Fraction(1, 2) + e_1_to_a(n - 1) + stay * e_half),
        ("q1 recursion",
         cur.q1, p1 * cur.q1 + p2 * cur.q3),
        ("q2 recursion",
         cur.q2,
         Fraction(3, 4) * (p2 + stay * cur.q2) + Fraction(1, 4) * (p1 * cur.q3 + p2 * cur.q1)),
        ("q3 recursion",
         cur.q3,
         Fraction(3, 4) * (p1 * cur.q3 + p2 * cur.q1) + Fraction(1, 4) * (stay * cur.q2 + p2)),
        ("half->a = 3^(n-1) / (2 p2(n-1))",
         e_half, Fraction(3 ** (n - 1)) / (2 * p2)),
        ("r->1 = r->a + (2/3) 1->3",
         e_r_to_1(n), e_r_to_a(n) + Fraction(2, 3) * e_1_to_3(n)),
        ("r->1 two closed forms agree",
         e_r_to_1(n), e_r_to_1_single_fraction(n)),
        ("q1 closed form = recurrence",
         q1_closed(n), q1_recurrence(n)),
    ]
    return [IdentityCheck(name, Fraction(lhs), Fraction(rhs)) for name, lhs, rhs in checks]


def world_end_ratio(n: int = 64) -> Fraction:
    """How many times longer the random 1->3 walk takes than the optimal solution."""
    return e_1_to_3(n) / min_moves(n)
