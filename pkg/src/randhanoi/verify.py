"""Cross-checks between the closed forms, the graph solvers, the resistor
network, the simulator and the bundled sequence fixtures."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import formulas, oeis, resistors, solver
from .core import build_graph, corner_codes
from .simulate import SimConfig, simulate
from .variants import VARIANTS, PuzzleVariant

F = Fraction

# Published expectations for n = 1, 2, ...
REFERENCE_VALUES: dict[PuzzleVariant, list[Fraction]] = {
    PuzzleVariant.RANDOM_TO_ANY: [F(0), F(2), F(18), F(116), F(660)],
    PuzzleVariant.ONE_TO_THREE: [F(2), F(64, 3), F(1274, 9), F(21760, 27)],
    PuzzleVariant.ONE_TO_ANY: [F(1), F(4), F(13), F(40), F(121), F(364)],
    PuzzleVariant.HALF_TO_ANY: [F(0), F(3), F(24), F(147), F(816), F(4323)],
    PuzzleVariant.RANDOM_TO_ONE: [F(4, 3), F(146, 9), F(3034, 27), F(52916, 81)],
}

MAX_EXACT_CHECK = 5
MAX_RESISTOR_CHECK = 30
MAX_ORACLE_CHECK = 5
MAX_MC_CHECK = 4
LEMMA_RANGE = range(2, 7)
ORACLE_RTOL = 1e-8
Z_LIMIT = 4.0


@dataclass(frozen=True)
class Check:
    section: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.section}: {self.name}{tail}"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, section: str, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(section, name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(
            f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"
        )
        if self.failures:
            lines.append("FAILED:")
            lines += ["  " + c.line() for c in self.failures]
        return "\n".join(lines) + "\n"


def check_reference_values(report: Report) -> None:
    for v, values in REFERENCE_VALUES.items():
        got = [formulas.expected_moves(n, v) for n in range(1, len(values) + 1)]
        report.add("reference", f"{v} n=1..{len(values)}", got == values,
                   ", ".join(str(x) for x in got))


def check_exact_solver(report: Report, n_max: int) -> None:
    for n in range(1, min(n_max, MAX_EXACT_CHECK) + 1):
        for v in VARIANTS:
            got, want = solver.solve_variant(n, v), formulas.expected_moves(n, v)
            report.add("formula=exact", f"{v} n={n}", got == want, f"{got} vs {want}")
        got_pq, want_pq = solver.pq_values(n), formulas.pq_closed(n)
        report.add("formula=exact", f"p/q n={n}", got_pq == want_pq)


def check_resistor_route(report: Report) -> None:
    bad_r = [n for n in range(1, 65) if resistors.reduce_gasket(n).R != formulas.wye_arm(n)]
    report.add("formula=resistor", "R(n) recurrence = closed form, n=1..64", not bad_r,
               f"mismatch at {bad_r}" if bad_r else "")
    bad_t = [n for n in range(1, MAX_RESISTOR_CHECK + 1)
             if resistors.one_way_time(n) != formulas.e_1_to_3(n)]
    report.add("formula=resistor", f"commute/2 = E_1->3, n=1..{MAX_RESISTOR_CHECK}", not bad_t,
               f"mismatch at {bad_t}" if bad_t else "")


def check_oracle(report: Report, n_max: int) -> None:
    for n in range(1, min(n_max, MAX_ORACLE_CHECK) + 1):
        a, _, c = corner_codes(n)
        got = resistors.effective_resistance_oracle(build_graph(n), a, c)
        want = float(resistors.corner_resistance(n))
        rel = abs(got - want) / want
        report.add("laplacian", f"corner resistance n={n}", rel < ORACLE_RTOL, f"rel err {rel:.2e}")


def check_lemmas(report: Report) -> None:
    for n in LEMMA_RANGE:
        failed = [c.name for c in formulas.check_lemma_identities(n) if not c.ok]
        report.add("identities", f"n={n}", not failed, "; ".join(failed))
    ratio = formulas.world_end_ratio(64)
    report.add("identities", "E_1->3(64) / (2^64 - 1) > 2.9e25", ratio > F(29, 10) * 10**25,
               f"{float(ratio):.4e}")


def check_simulation(report: Report, n_max: int, trials: int, seed: int) -> None:
    for n in range(1, min(n_max, MAX_MC_CHECK) + 1):
        for v in VARIANTS:
            stats = simulate(SimConfig(n, v, trials, seed))
            z = stats.z_score(formulas.expected_moves(n, v))
            ok = abs(z) < Z_LIMIT and stats.censored == 0
            report.add("monte-carlo", f"{v} n={n}", ok, f"mean {stats.mean:.4f}, z={z:+.2f}")


def check_fixtures(report: Report, fixture_dir: Optional[str]) -> None:
    for oeis_id in oeis.SEQUENCES:
        r = oeis.verify_against_fixture(oeis_id, fixture_dir)
        detail = "; ".join(f"index {i}: expected {e}, generated {g}" for i, e, g in r.mismatches)
        report.add("oeis", f"{oeis_id} fixture ({r.checked} terms)", r.ok, detail)


def run_verification(
    n_max: int = 5,
    trials: int = 20_000,
    seed: int = 2024,
    fixture_dir: Optional[str] = None,
) -> Report:
    if not 1 <= n_max <= solver.MAX_EXACT_DISKS:
        raise ValueError(f"n_max must be in 1..{solver.MAX_EXACT_DISKS}")
    report = Report()
    check_reference_values(report)
    check_exact_solver(report, n_max)
    check_resistor_route(report)
    check_oracle(report, n_max)
    check_lemmas(report)
    check_simulation(report, n_max, trials, seed)
    check_fixtures(report, fixture_dir)
    return report
