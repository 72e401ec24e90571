"""Frequency estimation and goodness-of-fit testing for ensemble records.

Turns recorded trial outcomes into exact integer counts, point estimates
with 95% Wilson score intervals, and a Pearson chi-square comparison against
an analytic reference distribution.  The chi-square tail probability uses
the Wilson-Hilferty cube-root normal approximation (see
:func:`chi_square_sf` for its accuracy envelope); the exact survival
function is deliberately not a runtime dependency, it serves as the test
oracle instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .hilbert import TsvfError, ValidationError
from .simulate import EnsembleRecord
from .twostate import OutcomeDistribution

__all__ = [
    "ChiSquarePreconditionError",
    "ChiSquareResult",
    "FrequencyReport",
    "wilson_interval",
    "frequencies",
    "binary_report",
    "chi_square_sf",
    "chi_square_gof",
    "frequency_report_to_dict",
    "Z_95",
]

# Two-sided 95% normal quantile used throughout for Wilson intervals.
Z_95 = 1.96
# Reference probabilities at or below this are treated as exactly zero when
# merging chi-square cells.
_ZERO_PROB_ATOL = 1e-12


class ChiSquarePreconditionError(TsvfError):
    """A chi-square cell fails the expected-count >= 5 rule; the message
    names the offending cell."""


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float


@dataclass(frozen=True)
class FrequencyReport:
    """Outcome counts with estimates and confidence intervals.

    ``counts`` maps eigenvalue -> integer count; ``point_estimates`` and
    ``intervals`` (low, high) are keyed the same way.  ``reference`` and
    ``chi_square`` are attached by :func:`chi_square_gof`.
    """

    counts: dict
    total: int
    point_estimates: dict
    intervals: dict
    confidence: float = 0.95
    reference: OutcomeDistribution | None = None
    chi_square: ChiSquareResult | None = None

    def interval_contains(self, eigenvalue: float, probability: float) -> bool:
        """True if the Wilson interval for ``eigenvalue`` contains
        ``probability`` (an outcome never observed counts as count 0)."""
        key = self._key(eigenvalue)
        if key in self.intervals:
            low, high = self.intervals[key]
        else:
            low, high = wilson_interval(0, self.total)
        return low <= probability <= high

    def _key(self, eigenvalue: float, atol: float = 1e-9):
        for key in self.counts:
            if abs(key - eigenvalue) <= atol:
                return key
        return eigenvalue


def wilson_interval(successes: int, total: int, z: float = Z_95) -> tuple:
    """Closed-form Wilson score interval for a binomial proportion.

    At the boundaries the exact algebra gives a bound of exactly 0 or 1;
    those cases are pinned so rounding cannot shave an ulp off them.
    """
    if total < 1:
        raise ValidationError("Wilson interval needs at least one observation")
    if not 0 <= successes <= total:
        raise ValidationError(f"successes {successes} outside [0, {total}]")
    p = successes / total
    z2 = z * z
    denominator = 1.0 + z2 / total
    center = (p + z2 / (2.0 * total)) / denominator
    half = (
        z
        * math.sqrt(p * (1.0 - p) / total + z2 / (4.0 * total * total))
        / denominator
    )
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == total else min(1.0, center + half)
    return low, high


def _report_from_counts(counts: dict, total: int) -> FrequencyReport:
    ordered = dict(sorted(counts.items()))
    estimates = {v: c / total for v, c in ordered.items()}
    intervals = {v: wilson_interval(c, total) for v, c in ordered.items()}
    return FrequencyReport(ordered, total, estimates, intervals)


def frequencies(rec: EnsembleRecord, time_label: str) -> FrequencyReport:
    """Exact outcome counts at ``time_label`` across all trials of ``rec``,
    with point estimates and 95% Wilson intervals.

    Raises
    ------
    ValidationError
        If the record is empty or any trial lacks an event at
        ``time_label``.
    """
    if rec.size == 0:
        raise ValidationError("cannot compute frequencies of an empty ensemble")
    counts: dict = {}
    for trial in rec.trials:
        outcome = trial.outcome_at(time_label)
        if outcome is None:
            raise ValidationError(
                f"trial {trial.trial_id} has no event at {time_label!r}"
            )
        counts[outcome] = counts.get(outcome, 0) + 1
    return _report_from_counts(counts, rec.size)


def binary_report(true_count: int, total: int) -> FrequencyReport:
    """Frequency report over the indicator outcomes {1.0 holds, 0.0 fails};
    used for per-trial relation checks."""
    if total < 1:
        raise ValidationError("binary report needs at least one trial")
    return _report_from_counts({1.0: true_count, 0.0: total - true_count}, total)


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def chi_square_sf(statistic: float, dof: int) -> float:
    """Chi-square survival function via the Wilson-Hilferty cube-root
    normal approximation.

    A zero statistic returns exactly 1 and dof 0 degenerates to a point
    mass.  Accuracy: within 1e-3 of the exact tail for p <= 0.02 at
    dof <= 8 (the regime where the package's pass/fail decisions live);
    mid-range errors for dof 1-2 can reach ~1e-2.
    """
    if dof < 0:
        raise ValidationError(f"dof must be >= 0, got {dof}")
    if statistic < 0.0:
        raise ValidationError(f"chi-square statistic must be >= 0, got {statistic}")
    if statistic == 0.0:
        return 1.0
    if dof == 0:
        return 1.0 if statistic < 1e-12 else 0.0
    if math.isinf(statistic):
        return 0.0
    scale = 2.0 / (9.0 * dof)
    z = ((statistic / dof) ** (1.0 / 3.0) - (1.0 - scale)) / math.sqrt(scale)
    return _normal_sf(z)


def chi_square_gof(
    report: FrequencyReport, reference: OutcomeDistribution
) -> FrequencyReport:
    """Pearson goodness-of-fit of observed counts against an analytic
    reference distribution.

    Cells with reference probability 0 are merged away when unobserved; an
    observed count in a zero-probability cell is an impossible event and
    hard-fails with p-value 0.  Remaining cells must have expected count
    >= 5.  The statistic is ``sum (O-E)^2 / E`` with ``dof = cells - 1``.

    Returns a copy of ``report`` with ``reference`` and ``chi_square``
    attached.

    Raises
    ------
    ValidationError
        If an observed outcome is missing from the reference support.
    ChiSquarePreconditionError
        If a surviving cell has expected count below 5 (names the cell).
    """

    def ref_prob(value: float) -> float | None:
        for v, p in reference.entries:
            if abs(v - value) <= 1e-9:
                return p
        return None

    for observed_value in report.counts:
        if ref_prob(observed_value) is None:
            raise ValidationError(
                f"observed outcome {observed_value} is not in the reference "
                f"distribution {reference.observable_label!r}"
            )

    impossible = False
    cells = []
    for value, prob in reference.entries:
        observed = 0
        for obs_value, count in report.counts.items():
            if abs(obs_value - value) <= 1e-9:
                observed = count
        if prob <= _ZERO_PROB_ATOL:
            if observed > 0:
                impossible = True
            continue
        cells.append((value, report.total * prob, observed))

    dof = max(len(cells) - 1, 0)
    if impossible:
        result = ChiSquareResult(math.inf, dof, 0.0)
        return replace(report, reference=reference, chi_square=result)

    for value, expected, _ in cells:
        if expected < 5.0:
            raise ChiSquarePreconditionError(
                f"expected count {expected:.3g} < 5 in cell for eigenvalue "
                f"{value}; collect more trials"
            )

    statistic = sum((o - e) ** 2 / e for _, e, o in cells)
    result = ChiSquareResult(statistic, dof, chi_square_sf(statistic, dof))
    return replace(report, reference=reference, chi_square=result)


def frequency_report_to_dict(report: FrequencyReport) -> dict:
    """JSON-ready document mirroring the FrequencyReport fields, rows in
    ascending eigenvalue order."""
    rows = [
        {
            "eigenvalue": value,
            "count": count,
            "estimate": report.point_estimates[value],
            "ci_low": report.intervals[value][0],
            "ci_high": report.intervals[value][1],
        }
        for value, count in sorted(report.counts.items())
    ]
    doc: dict = {
        "total": report.total,
        "confidence": report.confidence,
        "outcomes": rows,
    }
    if report.reference is not None:
        doc["reference"] = [
            {"eigenvalue": v, "probability": p} for v, p in report.reference.entries
        ]
    if report.chi_square is not None:
        doc["chi_square"] = {
            "stat": report.chi_square.statistic,
            "dof": report.chi_square.dof,
            "p": report.chi_square.p_value,
        }
    return doc
