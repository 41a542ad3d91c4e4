"""Machine-readable pass/fail reports shared by every checker.

Every checker in the package scans one or more condition families.  A family
is a pair of equally-shaped exact arrays (left and right side of the claimed
identity, quantifier indices as leading axes).  A report carries at most one
``Failure`` per family: the first mismatching entry in row-major scan order
plus the family's total violation count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True)
class Failure:
    """First witness of one violated condition family.

    ``condition`` is a stable tag (documented per checker), ``witness`` the
    0-based indices of the first violation in deterministic scan order,
    ``left``/``right`` the two sides at that witness as nested lists of
    canonical scalar strings, and ``count`` the total number of violations
    found in the family.
    """

    condition: str
    witness: tuple[int, ...] = ()
    left: object = None
    right: object = None
    count: int = 1


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    def conditions(self) -> set[str]:
        return {f.condition for f in self.failures}

    @classmethod
    def from_failures(cls, failures: Iterable[Failure]) -> "VerificationReport":
        fails = tuple(failures)
        return cls(ok=not fails, failures=fails)


PASS = VerificationReport(ok=True)


def family_failures(fld, tag: str, left: np.ndarray, right: np.ndarray) -> Iterator[Failure]:
    """Yield at most one Failure for the condition family ``left == right``."""
    mismatch = fld.reduce(left) != fld.reduce(right)
    if not mismatch.any():
        return
    count = int(np.count_nonzero(mismatch))
    witness = tuple(int(t) for t in np.argwhere(mismatch)[0])
    yield Failure(
        condition=tag,
        witness=witness,
        left=fld.format(left[witness]),
        right=fld.format(right[witness]),
        count=count,
    )


def pairs_report(fld, pairs) -> VerificationReport:
    """Fold an iterable of (tag, left, right) families into a report."""
    failures = []
    for tag, left, right in pairs:
        failures.extend(family_failures(fld, tag, left, right))
    return VerificationReport.from_failures(failures)


def pairs_ok(fld, pairs) -> bool:
    """Fast verdict: families are generated lazily, stop at the first failure."""
    return all(fld.equal(left, right) for _, left, right in pairs)
