"""Tower of Hanoi states, legal moves and the Sierpinski-gasket state graph.

A state of the n-disk puzzle is stored as a base-3 integer code: digit k-1
holds (peg of disk k) - 1, with disk 1 the smallest.  Pegs are numbered 1..3.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import IllegalMove, TooLarge

PEGS = (1, 2, 3)
MAX_GRAPH_DISKS = 14

# (from, to) pairs in lexicographic order; fixes the order of legal_moves.
PEG_PAIRS = tuple((a, b) for a in PEGS for b in PEGS if a != b)


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"disk count must be a positive integer, got {n!r}")


def _check_peg(p: int) -> None:
    if p not in PEGS:
        raise ValueError(f"peg must be one of 1, 2, 3, got {p!r}")


def encode(pegs: Sequence[int]) -> int:
    """Code of the state where disk k (1-based) sits on ``pegs[k-1]``."""
    code = 0
    for p in reversed(pegs):
        _check_peg(p)
        code = 3 * code + (p - 1)
    return code


def decode(code: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`encode`: tuple of pegs for disks 1..n."""
    if not 0 <= code < 3**n:
        raise ValueError(f"code {code} out of range for n={n}")
    pegs = []
    for _ in range(n):
        code, d = divmod(code, 3)
        pegs.append(d + 1)
    return tuple(pegs)


@dataclass(frozen=True, order=True)
class HanoiState:
    n: int
    code: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.code < 3**self.n:
            raise ValueError(f"code {self.code} out of range for n={self.n}")

    @classmethod
    def from_pegs(cls, pegs: Sequence[int]) -> HanoiState:
        return cls(len(pegs), encode(pegs))

    @property
    def pegs(self) -> tuple[int, ...]:
        return decode(self.code, self.n)

    def peg_of(self, disk: int) -> int:
        if not 1 <= disk <= self.n:
            raise ValueError(f"no disk {disk} in a {self.n}-disk state")
        return (self.code // 3 ** (disk - 1)) % 3 + 1

    def tops(self) -> dict[int, Optional[int]]:
        """Smallest disk on each peg (None for an empty peg)."""
        top: dict[int, Optional[int]] = {p: None for p in PEGS}
        for disk, p in enumerate(self.pegs, start=1):
            if top[p] is None:
                top[p] = disk
        return top

    def __str__(self):
        piles = {p: [] for p in PEGS}
        for disk, p in enumerate(self.pegs, start=1):
            piles[p].append(disk)
        return " | ".join(
            " ".join(str(d) for d in reversed(piles[p])) or "-" for p in PEGS
        )


class Move(NamedTuple):
    disk: int
    source: int
    target: int


def legal_moves(s: HanoiState) -> list[Move]:
    """Legal moves from ``s`` sorted by (source, target)."""
    top = s.tops()
    moves = []
    for a, b in PEG_PAIRS:
        d = top[a]
        if d is not None and (top[b] is None or top[b] > d):
            moves.append(Move(d, a, b))
    return moves


def apply_move(s: HanoiState, m: Move) -> HanoiState:
    if m not in legal_moves(s):
        raise IllegalMove(f"{m} is not legal in state {s.pegs}")
    return HanoiState(s.n, s.code + (m.target - m.source) * 3 ** (m.disk - 1))


def neighbors(s: HanoiState) -> list[HanoiState]:
    return [apply_move(s, m) for m in legal_moves(s)]


def corner_state(n: int, peg: int) -> HanoiState:
    _check_n(n)
    _check_peg(peg)
    return HanoiState(n, (peg - 1) * (3**n - 1) // 2)


def corner_codes(n: int) -> tuple[int, int, int]:
    return tuple(corner_state(n, p).code for p in PEGS)


def half_state(n: int) -> HanoiState:
    """Largest disk on peg 2, all smaller disks on peg 1."""
    _check_n(n)
    return HanoiState(n, 3 ** (n - 1))


def all_on_one_peg(s: HanoiState) -> Optional[int]:
    pegs = set(s.pegs)
    return pegs.pop() if len(pegs) == 1 else None


Permutation = Union[Sequence[int], Mapping[int, int]]


def _as_perm(sigma: Permutation) -> dict[int, int]:
    perm = dict(sigma) if isinstance(sigma, Mapping) else dict(zip(PEGS, sigma))
    if sorted(perm) != list(PEGS) or sorted(perm.values()) != list(PEGS):
        raise ValueError(f"not a permutation of the pegs: {sigma!r}")
    return perm


def permute_pegs(s: HanoiState, sigma: Permutation) -> HanoiState:
    """Relabel pegs: every disk on peg p moves to peg ``sigma(p)``.

    ``sigma`` is either a mapping or the sequence (sigma(1), sigma(2), sigma(3)).
    """
    perm = _as_perm(sigma)
    return HanoiState.from_pegs([perm[p] for p in s.pegs])


def all_permutations() -> Iterator[tuple[int, ...]]:
    return permutations(PEGS)


# -- explicit graph ----------------------------------------------------------


def _top_disks(n: int, codes: np.ndarray) -> np.ndarray:
    """Array (3, len(codes)) of the smallest disk per peg; n+1 marks empty."""
    top = np.full((3, codes.size), n + 1, dtype=np.int8)
    for k in range(n, 0, -1):
        digit = (codes // 3 ** (k - 1)) % 3
        for p in range(3):
            top[p, digit == p] = k
    return top


@lru_cache(maxsize=16)
def move_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Successor codes of every state, in :func:`legal_moves` order.

    Returns ``(succ, deg)`` where ``succ`` has shape (3**n, 3), padded with -1
    past ``deg[v]``.  Both arrays are read-only.
    """
    _check_n(n)
    if n > MAX_GRAPH_DISKS:
        raise TooLarge(n, MAX_GRAPH_DISKS)
    size = 3**n
    codes = np.arange(size, dtype=np.int64)
    top = _top_disks(n, codes)
    pow3 = 3 ** np.arange(n + 1, dtype=np.int64)
    succ = np.full((size, 3), -1, dtype=np.int64)
    deg = np.zeros(size, dtype=np.int8)
    for a, b in PEG_PAIRS:
        ta, tb = top[a - 1], top[b - 1]
        ok = (ta <= n) & (ta < tb)
        idx = np.nonzero(ok)[0]
        slot = deg[idx]
        succ[idx, slot] = codes[idx] + (b - a) * pow3[ta[idx] - 1]
        deg[idx] += 1
    succ.flags.writeable = False
    deg.flags.writeable = False
    return succ, deg


@dataclass(frozen=True, eq=False)
class StateGraph:
    """Undirected state graph in CSR layout; neighbor runs sorted ascending."""

    n: int
    offsets: np.ndarray
    indices: np.ndarray

    @property
    def num_vertices(self) -> int:
        return self.offsets.size - 1

    @property
    def num_edges(self) -> int:
        return self.indices.size // 2

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors(self, v: int) -> list[int]:
        return self.indices[self.offsets[v] : self.offsets[v + 1]].tolist()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v, in code order."""
        for u in range(self.num_vertices):
            for v in self.neighbors(u):
                if u < v:
                    yield u, v

    def is_connected(self) -> bool:
        seen = np.zeros(self.num_vertices, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while frontier.size:
            nxt = np.concatenate(
                [self.indices[self.offsets[v] : self.offsets[v + 1]] for v in frontier]
            )
            nxt = np.unique(nxt[~seen[nxt]])
            seen[nxt] = True
            frontier = nxt
        return bool(seen.all())


@lru_cache(maxsize=8)
def build_graph(n: int) -> StateGraph:
    """Sierpinski-gasket state graph of the n-disk puzzle (n <= 14)."""
    succ, deg = move_table(n)
    padded = np.where(succ < 0, np.iinfo(np.int64).max, succ)
    padded.sort(axis=1)
    offsets = np.zeros(succ.shape[0] + 1, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    indices = padded[padded != np.iinfo(np.int64).max]
    offsets.flags.writeable = False
    indices.flags.writeable = False
    return StateGraph(n, offsets, indices)


def write_edge_list(g: StateGraph, fh) -> None:
    """Write one ``u v`` line per edge (decimal codes, u < v)."""
    for u, v in g.edges():
        fh.write(f"{u} {v}\n")
