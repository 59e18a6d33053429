"""Compare our counting functions against OEIS b-file snapshots.

Each supported sequence is tied to one of our functions through a fixed index
mapping, listed in ``SEQUENCES``:

=========  ===========================  ============================
sequence   OEIS term a(i)               our value
=========  ===========================  ============================
A001147    (2i-1)!!, i >= 0             count_all(i + 1)
A001710    i!/2 (a(0)=a(1)=1)           count_ladder(i), i >= 2
A096351    knockout tournaments, i>=1   sigma_pairwise(i)
A268289    cumulative digit deficit     epsilon(i + 1)
A000992    half-Catalan, i >= 1         alpha(i)
A002620    floor(i^2/4), i >= 0         tau2_closed(i + 3)
A011371    exponent of 2 in i!          beta(i)
A049606    largest odd divisor of i!    i!/2^beta(i)
=========  ===========================  ============================

Terms whose index falls outside a function's domain (A001710 at i < 2) are
skipped, not compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import enumeration as E


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Sequence:
    id: str
    description: str
    ours: Callable[[int], int]
    first_index: int  # smallest OEIS index our function covers
    cap: int  # largest OEIS index we compute by default


SEQUENCES = {
    s.id: s
    for s in [
        Sequence("A001147", "computationally inequivalent summations", lambda i: E.count_all(i + 1), 0, 500),
        Sequence("A001710", "inequivalent ladder summations", E.count_ladder, 2, 500),
        Sequence("A096351", "inequivalent pairwise summations", E.sigma_pairwise, 1, 500),
        Sequence("A268289", "S-nodes of the pairwise tree", lambda i: E.epsilon(i + 1), 0, 100_000),
        Sequence("A000992", "parenthetic forms", E.alpha, 1, 500),
        Sequence("A002620", "forms with two S-nodes", lambda i: E.tau2_closed(i + 3), 0, 500),
        Sequence("A011371", "maximum S-node count", E.beta, 0, 100_000),
        Sequence("A049606", "minimum class size n!/2^beta(n)", E.min_class_count, 0, 500),
    ]
}


@dataclass(frozen=True)
class BFile:
    offset: int
    terms: tuple

    def items(self):
        return enumerate(self.terms, self.offset)


def parse_bfile(text: str) -> BFile:
    """``index term`` per line; ``#`` lines and blank lines are ignored."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FixtureError(f"line {lineno}: expected 'index term'")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FixtureError(f"line {lineno}: non-integer field") from None
    if not pairs:
        raise FixtureError("b-file has no terms")
    for (i, _), (j, _) in zip(pairs, pairs[1:]):
        if j != i + 1:
            raise FixtureError(f"indices must increase by 1: {i} then {j}")
    return BFile(pairs[0][0], tuple(t for _, t in pairs))


def load_bfile(path) -> BFile:
    return parse_bfile(Path(path).read_text())


def bundled_fixture(sequence_id: str) -> Path:
    """Path of the b-file snapshot shipped with the package."""
    return Path(__file__).parent / "data" / "oeis" / f"b{sequence_id[1:]}.txt"


@dataclass
class CheckResult:
    sequence: str
    checked: int
    skipped: int
    mismatch: Optional[tuple] = None  # (index, expected, ours)

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def check(sequence_id: str, bfile: BFile, max_terms: Optional[int] = None) -> CheckResult:
    """Compare term by term; stop at the first mismatch."""
    try:
        seq = SEQUENCES[sequence_id]
    except KeyError:
        raise ValueError(f"unknown sequence {sequence_id!r}; known: {', '.join(SEQUENCES)}") from None
    checked = skipped = 0
    for index, term in bfile.items():
        if max_terms is not None and checked >= max_terms:
            break
        if index < seq.first_index or index > seq.cap:
            skipped += 1
            continue
        ours = seq.ours(index)
        checked += 1
        if ours != term:
            return CheckResult(sequence_id, checked, skipped, (index, term, ours))
    return CheckResult(sequence_id, checked, skipped)
