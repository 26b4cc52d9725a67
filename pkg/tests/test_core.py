import io
import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from randhanoi.core import (
    HanoiState,
    Move,
    all_on_one_peg,
    all_permutations,
    apply_move,
    build_graph,
    corner_state,
    decode,
    encode,
    half_state,
    legal_moves,
    move_table,
    permute_pegs,
    write_edge_list,
)
from randhanoi.errors import IllegalMove, TooLarge


def brute_force_moves(pegs):
    """Legal moves from explicit piles, independent of the code arithmetic."""
    piles = {p: [] for p in (1, 2, 3)}
    for disk in range(len(pegs), 0, -1):  # largest first: bottom of the pile
        piles[pegs[disk - 1]].append(disk)
    moves = []
    for a, b in itertools.permutations((1, 2, 3), 2):
        if piles[a] and (not piles[b] or piles[b][-1] > piles[a][-1]):
            moves.append(Move(piles[a][-1], a, b))
    return sorted(moves, key=lambda m: (m.source, m.target))


def test_legal_moves_single_disk():
    assert legal_moves(corner_state(1, 1)) == [Move(1, 1, 2), Move(1, 1, 3)]


def test_legal_moves_corner_two_disks():
    moves = legal_moves(corner_state(2, 1))
    assert len(moves) == 2
    assert all(m.disk == 1 for m in moves)


def test_legal_moves_mixed_two_disks():
    s = HanoiState.from_pegs([2, 1])
    assert sorted(legal_moves(s)) == sorted([Move(1, 2, 1), Move(1, 2, 3), Move(2, 1, 3)])
    assert legal_moves(s) == brute_force_moves([2, 1])


@pytest.mark.parametrize("n", range(1, 7))
def test_move_counts_all_states(n):
    corners = {corner_state(n, p).code for p in (1, 2, 3)}
    for code in range(3**n):
        s = HanoiState(n, code)
        moves = legal_moves(s)
        assert moves == brute_force_moves(s.pegs)
        assert len(moves) == (2 if code in corners else 3)


def test_apply_move_examples():
    assert apply_move(corner_state(1, 1), Move(1, 1, 3)) == corner_state(1, 3)
    assert apply_move(corner_state(2, 1), Move(1, 1, 2)).pegs == (2, 1)


def test_apply_illegal_move():
    with pytest.raises(IllegalMove):
        apply_move(corner_state(2, 1), Move(2, 1, 3))
    with pytest.raises(IllegalMove):
        apply_move(corner_state(2, 1), Move(1, 2, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_moves_are_reversible_and_change_one_digit(n):
    for code in range(3**n):
        s = HanoiState(n, code)
        for m in legal_moves(s):
            t = apply_move(s, m)
            assert sum(a != b for a, b in zip(s.pegs, t.pegs)) == 1
            assert t.peg_of(m.disk) == m.target
            assert apply_move(t, Move(m.disk, m.target, m.source)) == s


def test_corner_codes():
    assert corner_state(2, 1).code == 0
    assert corner_state(2, 3).code == 8
    assert corner_state(3, 2).code == 13


def test_half_state():
    assert half_state(1) == corner_state(1, 2)
    assert half_state(2).code == 3 and half_state(2).pegs == (1, 2)
    assert half_state(3).code == 9 and half_state(3).pegs == (1, 1, 2)


def test_all_on_one_peg():
    assert all_on_one_peg(corner_state(3, 2)) == 2
    assert all_on_one_peg(half_state(2)) is None
    assert all_on_one_peg(half_state(1)) == 2


def test_invalid_inputs():
    with pytest.raises(ValueError):
        HanoiState(2, 9)
    with pytest.raises(ValueError):
        corner_state(0, 1)
    with pytest.raises(ValueError):
        corner_state(2, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_encode_decode_roundtrip(n):
    for code in range(3**n):
        assert encode(decode(code, n)) == code


@given(st.lists(st.integers(1, 3), min_size=1, max_size=20))
def test_decode_encode_roundtrip(pegs):
    assert decode(encode(pegs), len(pegs)) == tuple(pegs)


@pytest.mark.parametrize("n,v,e", [(1, 3, 3), (2, 9, 12), (3, 27, 39)])
def test_build_graph_sizes(n, v, e):
    g = build_graph(n)
    assert g.num_vertices == v
    assert g.num_edges == e
    assert g.is_connected()


@pytest.mark.parametrize("n", range(1, 11))
def test_edge_count_formula(n):
    assert build_graph(n).num_edges == 3 * (3**n - 1) // 2


@pytest.mark.parametrize("n", range(1, 7))
def test_graph_matches_legal_moves(n):
    g = build_graph(n)
    deg = g.degrees()
    assert (deg == 2).sum() == 3 and (deg == 3).sum() == 3**n - 3
    for code in range(3**n):
        expected = sorted(apply_move(HanoiState(n, code), m).code
                          for m in legal_moves(HanoiState(n, code)))
        assert g.neighbors(code) == expected
    for u, v in g.edges():
        assert u < v and u in g.neighbors(v)
    assert all(u not in g.neighbors(u) for u in range(3**n))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_move_table_order(n):
    succ, deg = move_table(n)
    for code in range(3**n):
        s = HanoiState(n, code)
        want = [apply_move(s, m).code for m in legal_moves(s)]
        assert succ[code, : deg[code]].tolist() == want
        assert (succ[code, deg[code]:] == -1).all()


def test_graph_is_read_only():
    g = build_graph(3)
    with pytest.raises(ValueError):
        g.indices[0] = 5


def test_graph_too_large():
    with pytest.raises(TooLarge):
        build_graph(15)


def test_permute_pegs_examples():
    s = HanoiState.from_pegs([1, 3, 2])
    assert permute_pegs(s, (1, 2, 3)) == s
    assert permute_pegs(corner_state(4, 1), {1: 3, 2: 2, 3: 1}) == corner_state(4, 3)
    assert permute_pegs(half_state(3), (1, 3, 2)).pegs == (1, 1, 3)
    with pytest.raises(ValueError):
        permute_pegs(s, (1, 1, 2))


@pytest.mark.parametrize("n", range(1, 6))
def test_permutations_are_automorphisms(n):
    g = build_graph(n)
    edges = set(g.edges())
    for sigma in all_permutations():
        mapped = set()
        for u, v in edges:
            a = permute_pegs(HanoiState(n, u), sigma).code
            b = permute_pegs(HanoiState(n, v), sigma).code
            mapped.add((min(a, b), max(a, b)))
        assert mapped == edges


def test_edge_list_export():
    buf = io.StringIO()
    write_edge_list(build_graph(1), buf)
    assert buf.getvalue() == "0 1\n0 2\n1 2\n"
    buf = io.StringIO()
    write_edge_list(build_graph(3), buf)
    pairs = [tuple(map(int, line.split())) for line in buf.getvalue().splitlines()]
    assert len(pairs) == 39 and all(u < v for u, v in pairs)
    assert len(set(pairs)) == 39


def test_state_str():
    assert str(HanoiState.from_pegs([2, 1, 1])) == "3 2 | 1 | -"
    assert np.all(build_graph(2).degrees() >= 2)
