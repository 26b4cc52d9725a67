"""Monte Carlo simulation of the uniform random-move process.

Trials are independent and each uses its own counter-based stream (see
:mod:`randhanoi.rng`), so results depend only on
(n, variant, trials, master_seed, max_steps) and never on how trials are
split across workers.  Censored trials (step cap reached) enter the
statistics at ``max_steps``, a lower bound, and are counted separately.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import rng
from .core import (
    HanoiState,
    all_on_one_peg,
    apply_move,
    corner_codes,
    corner_state,
    half_state,
    legal_moves,
    move_table,
)
from .errors import Censored, IllegalMove, InsufficientTrials
from .formulas import expected_moves
from .variants import PuzzleVariant

DEFAULT_MAX_STEPS = 10**9
DEFAULT_RESAMPLES = 1000
MIN_CV_TRIALS = 1000
# second SeedSequence word for the bootstrap generator
BOOTSTRAP_TAG = 0xB007


@dataclass(frozen=True)
class SimConfig:
    n: int
    variant: PuzzleVariant
    trials: int
    master_seed: int = 0
    max_steps: int = DEFAULT_MAX_STEPS
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimStats:
    trials: int
    mean: float
    variance: float
    stddev: float
    cv: float
    ci95_halfwidth: float
    min: int
    max: int
    censored: int

    @classmethod
    def from_steps(cls, steps: np.ndarray, censored: int = 0) -> SimStats:
        # exact integer moments, so the floats do not depend on summation order
        vals = steps.astype(object)
        n = len(vals)
        s = int(vals.sum())
        q = int((vals * vals).sum())
        mean = float(Fraction(s, n))
        var = float(Fraction(n * q - s * s, n * (n - 1))) if n > 1 else 0.0
        sd = math.sqrt(var)
        return cls(
            trials=n,
            mean=mean,
            variance=var,
            stddev=sd,
            cv=sd / mean if mean > 0 else 0.0,
            ci95_halfwidth=1.96 * sd / math.sqrt(n),
            min=int(steps.min()),
            max=int(steps.max()),
            censored=censored,
        )

    @property
    def stderr(self) -> float:
        return self.stddev / math.sqrt(self.trials)

    def z_score(self, reference: float) -> float:
        diff = self.mean - float(reference)
        if self.stderr == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.stderr


def _start(n: int, variant: PuzzleVariant) -> Optional[HanoiState]:
    if variant.start == "corner":
        return corner_state(n, 1)
    if variant.start == "half":
        return half_state(n)
    return None


def _is_target(s: HanoiState, variant: PuzzleVariant) -> bool:
    peg = all_on_one_peg(s)
    return peg is not None and (variant.target_peg is None or peg == variant.target_peg)


def run_trial(
    n: int,
    variant: PuzzleVariant,
    stream: rng.TrialStream,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> int:
    """Play one random-move game and return its number of moves.

    A random start draws the peg of disk 1, 2, ..., n in turn.  Each move
    picks uniformly among :func:`legal_moves` in their listed order.
    Raises :class:`Censored` after ``max_steps`` moves without finishing.
    """
    s = _start(n, variant)
    if s is None:
        s = HanoiState.from_pegs([stream.choice(3) + 1 for _ in range(n)])
    steps = 0
    if variant.min_moves == 0 and _is_target(s, variant):
        return 0
    while True:
        if steps >= max_steps:
            raise Censored(max_steps)
        moves = legal_moves(s)
        s = apply_move(s, moves[stream.choice(len(moves))])
        steps += 1
        if _is_target(s, variant):
            return steps


def _target_mask(n: int, variant: PuzzleVariant) -> np.ndarray:
    mask = np.zeros(3**n, dtype=bool)
    if variant.target_peg is None:
        mask[list(corner_codes(n))] = True
    else:
        mask[corner_state(n, variant.target_peg).code] = True
    return mask


def _check_transitions(n: int, old: np.ndarray, new: np.ndarray) -> None:
    """Raise IllegalMove unless every old -> new pair is one legal move."""
    pow3 = 3 ** np.arange(n, dtype=np.int64)
    d_old = (old[:, None] // pow3) % 3
    d_new = (new[:, None] // pow3) % 3
    changed = d_old != d_new
    bad = changed.sum(axis=1) != 1
    disk = changed.argmax(axis=1)
    rows = np.arange(old.size)
    src, dst = d_old[rows, disk], d_new[rows, disk]
    other = 3 - src - dst
    # every smaller disk must sit on the third peg
    smaller = np.arange(n)[None, :] < disk[:, None]
    bad |= (smaller & (d_old != other[:, None])).any(axis=1)
    if bad.any():
        i = int(np.nonzero(bad)[0][0])
        raise IllegalMove(f"illegal transition {int(old[i])} -> {int(new[i])} (n={n})")


def _simulate_range(
    n: int,
    variant: PuzzleVariant,
    master_seed: int,
    first: int,
    stop: int,
    max_steps: int,
    checked: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised trials ``first..stop-1``; returns (steps, censored flags)."""
    succ, deg = move_table(n)
    target = _target_mask(n, variant)
    size = stop - first
    keys = rng.stream_keys(master_seed, np.arange(first, stop, dtype=np.int64))
    counter = np.zeros(size, dtype=np.int64)
    steps = np.zeros(size, dtype=np.int64)
    censored = np.zeros(size, dtype=bool)

    start = _start(n, variant)
    if start is None:
        state = np.zeros(size, dtype=np.int64)
        three = np.full(size, 3)
        for k in range(n):
            pending = np.arange(size)
            while pending.size:
                counter[pending] += 1
                u = rng.draw_array(keys[pending], counter[pending])
                c, ok = rng.choice_array(u, three[: pending.size])
                state[pending[ok]] += c[ok] * 3**k
                pending = pending[~ok]
    else:
        state = np.full(size, start.code, dtype=np.int64)

    done = target[state] if variant.min_moves == 0 else np.zeros(size, dtype=bool)
    live = np.nonzero(~done)[0]
    a_key, a_ctr, a_state = keys[live], counter[live], state[live]
    a_steps = np.zeros(live.size, dtype=np.int64)
    while live.size:
        capped = a_steps >= max_steps
        if capped.any():
            steps[live[capped]] = max_steps
            censored[live[capped]] = True
            keep = ~capped
            live, a_key, a_ctr, a_state, a_steps = (
                live[keep], a_key[keep], a_ctr[keep], a_state[keep], a_steps[keep])
            if not live.size:
                break
        a_ctr += 1
        u = rng.draw_array(a_key, a_ctr)
        c, ok = rng.choice_array(u, deg[a_state])
        new = succ[a_state, c]
        if checked:
            _check_transitions(n, a_state[ok], new[ok])
        a_state = np.where(ok, new, a_state)
        a_steps += ok
        fin = ok & target[a_state]
        if fin.any():
            steps[live[fin]] = a_steps[fin]
            keep = ~fin
            live, a_key, a_ctr, a_state, a_steps = (
                live[keep], a_key[keep], a_ctr[keep], a_state[keep], a_steps[keep])
    return steps, censored


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_chunk(args):
    return _simulate_range(*args)


def simulate_steps(cfg: SimConfig, checked: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial move counts and censored flags, in trial order."""
    jobs = [
        (cfg.n, cfg.variant, cfg.master_seed, a, b, cfg.max_steps, checked)
        for a, b in _chunks(cfg.trials, cfg.workers)
    ]
    if cfg.workers == 1 or len(jobs) == 1:
        parts = [_run_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    steps = np.concatenate([p[0] for p in parts])
    censored = np.concatenate([p[1] for p in parts])
    return steps, censored


def simulate(cfg: SimConfig, checked: bool = False) -> SimStats:
    steps, censored = simulate_steps(cfg, checked)
    return SimStats.from_steps(steps, int(censored.sum()))


def write_steps(steps: np.ndarray, fh) -> None:
    """Dump one step count per line."""
    for s in steps.tolist():
        fh.write(f"{s}\n")


def exact_reference(n: int, variant: PuzzleVariant) -> Fraction:
    return expected_moves(n, variant)


class CVEstimate(NamedTuple):
    """Sample coefficient of variation with a bootstrap percentile interval.

    ``cv`` is None when the sample mean is zero (CV not applicable).
    """

    cv: Optional[float]
    ci: Optional[tuple[float, float]]
    resamples: int

    @property
    def applicable(self) -> bool:
        return self.cv is not None


def estimate_cv(cfg: SimConfig, resamples: int = DEFAULT_RESAMPLES) -> CVEstimate:
    """Estimate stddev/mean of the move count with a bootstrap 95% interval.

    The bootstrap draws ``resamples`` multinomial resamples of the observed
    step-count histogram from numpy's PCG64 seeded with
    ``SeedSequence([master_seed, BOOTSTRAP_TAG])``.
    """
    if cfg.trials < MIN_CV_TRIALS:
        raise InsufficientTrials(f"need at least {MIN_CV_TRIALS} trials, got {cfg.trials}")
    steps, censored = simulate_steps(cfg)
    stats = SimStats.from_steps(steps, int(censored.sum()))
    if stats.mean == 0:
        return CVEstimate(None, None, resamples)
    values, counts = np.unique(steps, return_counts=True)
    gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.master_seed, BOOTSTRAP_TAG])))
    draws = gen.multinomial(cfg.trials, counts / cfg.trials, size=resamples)
    x = values.astype(float)
    mean = draws @ x / cfg.trials
    second = draws @ (x * x) / cfg.trials
    var = np.maximum(second - mean**2, 0.0) * cfg.trials / (cfg.trials - 1)
    cvs = np.sqrt(var) / mean
    lo, hi = np.quantile(cvs, [0.025, 0.975])
    return CVEstimate(stats.cv, (float(lo), float(hi)), resamples)
