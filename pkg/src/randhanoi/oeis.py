"""Integer sequences behind the expected-move formulas, checked against OEIS.

Indices follow the formula table: A134939 and A246961 hold numerators over
powers of 3, and A226511 is shifted so that A226511(n-1) is the half-start
expectation for n disks.  Remote b-files are optional and only ever
compared against, never required.
"""
from __future__ import annotations

import logging
import os
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Union

from . import formulas
from .errors import NetworkError, ParseError, UnknownSequence

log = logging.getLogger(__name__)

BASE_URL_ENV = "RANDHANOI_OEIS_URL"
DEFAULT_BASE_URL = "https://oeis.org"
DEFAULT_TIMEOUT = 10.0


@dataclass(frozen=True)
class SequenceSpec:
    oeis_id: str
    description: str
    offset: int
    formula: Callable[[int], Fraction]

    def term(self, index: int) -> int:
        value = Fraction(self.formula(index))
        if value.denominator != 1:
            raise ValueError(f"{self.oeis_id}({index}) = {value} is not an integer")
        return value.numerator


SEQUENCES: dict[str, SequenceSpec] = {
    s.oeis_id: s
    for s in (
        SequenceSpec("A007798", "E_r->a(n)", 1, formulas.e_r_to_a),
        SequenceSpec("A134939", "E_1->3(n) * 3^(n-1)", 1,
                     lambda i: formulas.e_1_to_3(i) * 3 ** (i - 1)),
        SequenceSpec("A003462", "E_1->a(n) = (3^n - 1)/2", 1, lambda i: Fraction(3**i - 1, 2)),
        SequenceSpec("A226511", "E_1/2->a(n+1)", 0, lambda i: formulas.e_half_to_a(i + 1)),
        SequenceSpec("A246961", "E_r->1(n) * 3^n", 1, lambda i: formulas.e_r_to_1(i) * 3**i),
        SequenceSpec("A000244", "3^n", 0, lambda i: Fraction(3**i)),
    )
}


def get_spec(oeis_id: str) -> SequenceSpec:
    key = oeis_id.strip().upper()
    if key not in SEQUENCES:
        raise UnknownSequence(oeis_id)
    return SEQUENCES[key]


def generate_sequence(oeis_id: str, count: int, start: Optional[int] = None) -> list[int]:
    """First ``count`` terms from the sequence offset (or from ``start``)."""
    spec = get_spec(oeis_id)
    first = spec.offset if start is None else start
    return [spec.term(i) for i in range(first, first + count)]


# -- b-file format -----------------------------------------------------------

Terms = list[tuple[int, int]]


def parse_bfile(text: str) -> Terms:
    """Parse ``index value`` lines; '#' comments and blank lines are skipped."""
    terms = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ParseError(line_no, line)
        try:
            terms.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(line_no, line) from None
    return terms


def format_bfile(terms: Terms, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()]
    lines += [f"{i} {v}" for i, v in terms]
    return "\n".join(lines) + "\n"


def fixture_path(oeis_id: str, fixture_dir: Union[str, Path, None] = None) -> Path:
    spec = get_spec(oeis_id)
    if fixture_dir is not None:
        return Path(fixture_dir) / f"{spec.oeis_id}.txt"
    return Path(str(resources.files("randhanoi") / "data" / "oeis" / f"{spec.oeis_id}.txt"))


def load_fixture(oeis_id: str, fixture_dir: Union[str, Path, None] = None) -> Terms:
    return parse_bfile(fixture_path(oeis_id, fixture_dir).read_text())


@dataclass
class VerifyReport:
    oeis_id: str
    source: str
    checked: int = 0
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)  # (index, expected, got)
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    offset_shift: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.errors

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        out = [f"{self.oeis_id} [{self.source}] {status}: {self.checked} terms checked"]
        out += [f"  mismatch at index {i}: expected {e}, generated {g}" for i, e, g in self.mismatches]
        out += [f"  error: {e}" for e in self.errors]
        out += [f"  warning: {w}" for w in self.warnings]
        return out


def compare_terms(oeis_id: str, terms: Terms, source: str) -> VerifyReport:
    spec = get_spec(oeis_id)
    report = VerifyReport(spec.oeis_id, source)
    if not terms:
        report.warnings.append("no terms to compare (vacuous pass)")
    for index, expected in terms:
        got = spec.term(index)
        report.checked += 1
        if got != expected:
            report.mismatches.append((index, expected, got))
    return report


def verify_against_fixture(oeis_id: str, fixture_dir: Union[str, Path, None] = None) -> VerifyReport:
    return compare_terms(oeis_id, load_fixture(oeis_id, fixture_dir), "fixture")


# -- remote ------------------------------------------------------------------


def bfile_url(oeis_id: str, base_url: Optional[str] = None) -> str:
    spec = get_spec(oeis_id)
    base = (base_url or os.environ.get(BASE_URL_ENV) or DEFAULT_BASE_URL).rstrip("/")
    return f"{base}/{spec.oeis_id}/b{spec.oeis_id[1:]}.txt"


def fetch_remote(oeis_id: str, base_url: Optional[str] = None, timeout: float = DEFAULT_TIMEOUT) -> Terms:
    url = bfile_url(oeis_id, base_url)
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            text = resp.read().decode("utf-8")
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkError(f"cannot fetch {url}: {exc}") from exc
    return parse_bfile(text)


def align_offset(reference: Terms, remote: Terms) -> Optional[int]:
    """Shift s with remote index = local index + s, found by locating the
    first reference term in the remote data and requiring the rest of the
    reference run to follow it.  None if no alignment exists.
    """
    if not reference:
        return 0
    values = [v for _, v in reference]
    remote_values = [v for _, v in remote]
    for p in range(len(remote_values)):
        if remote_values[p : p + len(values)] == values:
            return remote[p][0] - reference[0][0]
    return None


def verify_remote(
    oeis_id: str,
    base_url: Optional[str] = None,
    timeout: float = DEFAULT_TIMEOUT,
    fixture_dir: Union[str, Path, None] = None,
    max_terms: int = 200,
) -> VerifyReport:
    """Compare generated terms with a fetched b-file.

    Network or parse failures fall back to the fixture comparison, marked
    ``fixture-only``.  A remote offset different from ours is reported as a
    warning and the comparison proceeds on the aligned indices.
    """
    fixture = load_fixture(oeis_id, fixture_dir)
    try:
        remote = fetch_remote(oeis_id, base_url, timeout)
    except (NetworkError, ParseError) as exc:
        log.warning("remote check of %s unavailable: %s", oeis_id, exc)
        report = compare_terms(oeis_id, fixture, "fixture-only")
        report.warnings.append(f"remote unavailable: {exc}")
        return report
    shift = align_offset(fixture, remote)
    if shift is None:
        report = VerifyReport(get_spec(oeis_id).oeis_id, "remote")
        report.errors.append("could not align remote terms with the fixture")
        return report
    offset = get_spec(oeis_id).offset
    aligned = [(i - shift, v) for i, v in remote[:max_terms] if i - shift >= offset]
    report = compare_terms(oeis_id, aligned, "remote")
    report.offset_shift = shift
    if shift:
        report.warnings.append(f"remote offset differs by {shift:+d} from local indexing")
    return report
