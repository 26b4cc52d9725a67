from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from randhanoi import formulas as fm
from randhanoi.solver import pq_values, solve_variant
from randhanoi.variants import VARIANTS

F = Fraction


def test_e_r_to_a():
    assert fm.e_r_to_a(0) == 0
    assert fm.e_r_to_a(4) == 116
    assert fm.e_r_to_a(5) == 660


def test_e_1_to_3():
    assert fm.e_1_to_3(1) == 2
    assert fm.e_1_to_3(3) == F(1274, 9)
    assert fm.e_1_to_3(4) == F(21760, 27)


def test_e_1_to_a():
    assert [fm.e_1_to_a(n) for n in (1, 5, 6)] == [1, 121, 364]


def test_e_half_to_a():
    assert [fm.e_half_to_a(n) for n in (1, 4, 6)] == [0, 147, 4323]


def test_e_r_to_1():
    assert fm.e_r_to_1(1) == F(4, 3)
    assert fm.e_r_to_1(3) == F(3034, 27)
    assert fm.e_r_to_1(4) == F(52916, 81)


@pytest.mark.parametrize("n", range(1, 31))
def test_e_r_to_1_forms_agree(n):
    assert fm.e_r_to_1(n) == fm.e_r_to_1_single_fraction(n)


def test_e_1_to_3_denominator():
    for n in range(1, 20):
        assert (2 * 3 ** (n - 1)) % fm.e_1_to_3(n).denominator == 0


def test_integer_valued():
    for n in range(1, 40):
        assert fm.e_r_to_a(n).denominator == 1
        assert fm.e_1_to_a(n).denominator == 1
        assert fm.e_half_to_a(n).denominator == 1


def test_q1():
    assert fm.q1_closed(1) == 0
    assert fm.q1_closed(2) == F(1, 8)
    # one step of the recurrence from q1(2) = 1/8
    assert fm.q1_closed(3) == 1 / (8 - F(15, 8)) == F(8, 49)
    assert fm.q1_recurrence(2) == F(1, 8)
    assert fm.q1_recurrence(3) == F(8, 49)
    assert fm.q1_recurrence(10) == fm.q1_closed(10)


@pytest.mark.parametrize("n", range(2, 51))
def test_q1_recurrence_matches_closed(n):
    assert fm.q1_recurrence(n) == fm.q1_closed(n)


@given(st.integers(1, 200))
def test_q1_range_and_pq_invariants(n):
    assert 0 <= fm.q1_closed(n) <= F(1, 5)
    pq = fm.pq_closed(n)
    assert pq.p1 + 2 * pq.p2 == 1
    assert pq.q1 + pq.q2 + pq.q3 == 1
    assert all(0 <= x <= 1 for x in pq.as_dict().values())
    assert pq.p2 == F(3 ** (n - 1), 5**n - 3**n)


def test_pq_closed_examples():
    pq = fm.pq_closed(2)
    assert (pq.p1, pq.p2, pq.q1, pq.q2, pq.q3) == (F(5, 8), F(3, 16), F(1, 8), F(5, 8), F(1, 4))
    pq = fm.pq_closed(1)
    assert (pq.p1, pq.p2, pq.q2) == (0, F(1, 2), 1)
    assert fm.pq_closed(3).p2 == F(9, 98) == pq_values(3).p2


@pytest.mark.parametrize("n", range(1, 7))
def test_pq_closed_matches_solver(n):
    assert fm.pq_closed(n) == pq_values(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_formulas_match_solver(n):
    for v in VARIANTS:
        assert fm.expected_moves(n, v) == solve_variant(n, v)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 12, 40])
def test_lemma_identities(n):
    checks = fm.check_lemma_identities(n)
    assert len(checks) == 13
    assert [c.name for c in checks if not c.ok] == []


def test_ratio_identity_at_one_disk():
    assert fm.e_1_to_a(1) / fm.pq_closed(1).p2 == 2 == fm.e_1_to_3(1)


def test_lemma_needs_n_at_least_2():
    with pytest.raises(ValueError):
        fm.check_lemma_identities(1)


def test_min_moves():
    assert fm.min_moves(0) == 0
    assert fm.min_moves(3) == 7
    assert fm.min_moves(64) == 18446744073709551615


def test_world_end_ratio():
    ratio = fm.world_end_ratio(64)
    assert ratio > F(29, 10) * 10**25
    assert ratio.denominator > 1


def test_monotone():
    for f in fm.E_FORMULAS.values():
        vals = [f(n) for n in range(1, 21)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_evaluate_every_formula():
    for fid in fm.FormulaId:
        res = fm.evaluate(fid, 3)
        assert res.formula is fid and res.n == 3 and isinstance(res.value, Fraction)
    assert fm.evaluate(fm.FormulaId.EQ10, 5).value == fm.evaluate(fm.FormulaId.EQ11, 5).value
    assert fm.evaluate(fm.FormulaId.EQ12, 4).value == fm.e_1_to_3(4)
    assert fm.evaluate(fm.FormulaId.M_N, 2).value == 12


def test_domain_errors():
    with pytest.raises(ValueError):
        fm.e_1_to_3(0)
    with pytest.raises(ValueError):
        fm.e_r_to_a(-1)
