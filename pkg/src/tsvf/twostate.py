"""Analytic calculators for pre- and post-selected quantum systems.

A system between two complete ideal measurements is described by an ordered
pair of states: the forward state (prepared at the earlier time) and the
backward state (found at the later time).  This module evaluates, in closed
form, everything the package's Monte Carlo engine verifies empirically:

* Born outcome distributions for a single state,
* conditional outcome distributions for a two-state (pre/post-selected)
  system via the ABL rule,
* weak values of arbitrary operators,
* "elements of reality" (outcomes inferable with certainty),
* the decomposition of an undisturbed outcome probability over the final
  outcomes of a complete later measurement, including the deliberately
  erroneous bookkeeping variant that historically produced a bogus
  inconsistency claim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import (
    DimensionMismatchError,
    Observable,
    LinearOperator,
    StateVector,
    TsvfError,
    ValidationError,
    rank_one_vector,
)

__all__ = [
    "PostSelectionImpossibleError",
    "WeakValueUndefinedError",
    "TwoStateVector",
    "OutcomeDistribution",
    "born_distribution",
    "abl_distribution",
    "weak_value",
    "projector_weak_values",
    "elements_of_reality",
    "final_outcome_probabilities",
    "decomposition_check",
    "ZERO_OVERLAP_ATOL",
    "CERTAINTY_ATOL",
]

# Hard threshold on raw (unnormalized) overlap quantities below which the
# ABL denominator / weak-value denominator counts as vanishing.
ZERO_OVERLAP_ATOL = 1e-12
# "Certainty" for elements of reality means probability 1 up to arithmetic noise.
CERTAINTY_ATOL = 1e-10


class PostSelectionImpossibleError(TsvfError):
    """Post-selection impossible for this intermediate measurement: every
    outcome branch has vanishing overlap with the backward state."""


class WeakValueUndefinedError(TsvfError):
    """Weak value undefined: the forward and backward states are orthogonal."""


@dataclass(frozen=True)
class TwoStateVector:
    """Ordered pair (backward state, forward state) describing a pre- and
    post-selected system at an intermediate time.

    ``forward`` is the state prepared at the earlier time, ``backward`` the
    state the final measurement found at the later time.
    """

    forward: StateVector
    backward: StateVector

    def __post_init__(self):
        if self.forward.dim != self.backward.dim:
            raise DimensionMismatchError(
                f"forward dim {self.forward.dim} != backward dim {self.backward.dim}"
            )

    @property
    def dim(self) -> int:
        return self.forward.dim

    def swapped(self) -> "TwoStateVector":
        """Interchange the roles of the forward and backward states."""
        return TwoStateVector(forward=self.backward, backward=self.forward)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over the distinct eigenvalues of one observable.

    Entries are (eigenvalue, probability) pairs in ascending eigenvalue
    order, one per distinct eigenvalue, summing to 1 within 1e-10.
    """

    observable_label: str
    entries: tuple

    def __post_init__(self):
        entries = tuple((float(v), float(p)) for v, p in self.entries)
        if not entries:
            raise ValidationError("distribution needs at least one entry")
        total = sum(p for _, p in entries)
        if abs(total - 1.0) > 1e-10:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        for _, p in entries:
            if p < -1e-12 or p > 1.0 + 1e-12:
                raise ValidationError(f"probability {p!r} outside [0, 1]")
        object.__setattr__(self, "entries", entries)

    @property
    def eigenvalues(self) -> tuple:
        return tuple(v for v, _ in self.entries)

    @property
    def probabilities(self) -> tuple:
        return tuple(p for _, p in self.entries)

    def probability_of(self, eigenvalue: float, atol: float = 1e-9) -> float:
        for v, p in self.entries:
            if abs(v - eigenvalue) <= atol:
                return p
        raise ValidationError(
            f"{eigenvalue} is not an outcome of {self.observable_label!r}"
        )


def _expectation(state: StateVector, projector: np.ndarray) -> float:
    value = float(np.real(np.vdot(state.amplitudes, projector @ state.amplitudes)))
    return max(value, 0.0)


def _cross_amplitude(tsv: TwoStateVector, matrix: np.ndarray) -> complex:
    """<backward| M |forward>."""
    return complex(np.vdot(tsv.backward.amplitudes, matrix @ tsv.forward.amplitudes))


def born_distribution(state: StateVector, obs: Observable) -> OutcomeDistribution:
    """Outcome distribution of an ideal measurement on a single state:
    probability of eigenvalue ``a_i`` is the projector expectation
    ``<psi|P_i|psi>``."""
    if state.dim != obs.dim:
        raise DimensionMismatchError(
            f"state dim {state.dim} != observable dim {obs.dim}"
        )
    entries = [(v, _expectation(state, p)) for v, p in zip(obs.eigenvalues, obs.projectors)]
    return OutcomeDistribution(obs.label, tuple(entries))


def abl_distribution(tsv: TwoStateVector, obs: Observable) -> OutcomeDistribution:
    """Conditional outcome distribution for an intermediate ideal measurement
    on a pre- and post-selected system (the ABL rule):

        Prob(a_i) = |<backward|P_i|forward>|^2 / sum_j |<backward|P_j|forward>|^2

    The normalization makes the probabilities sum to 1 exactly.  The rule is
    invariant under swapping the forward and backward states.

    Raises
    ------
    PostSelectionImpossibleError
        If the raw denominator is below ``ZERO_OVERLAP_ATOL``: no intermediate
        outcome is compatible with both selections.
    """
    if tsv.dim != obs.dim:
        raise DimensionMismatchError(
            f"two-state dim {tsv.dim} != observable dim {obs.dim}"
        )
    weights = [abs(_cross_amplitude(tsv, p)) ** 2 for p in obs.projectors]
    denominator = sum(weights)
    if denominator <= ZERO_OVERLAP_ATOL:
        raise PostSelectionImpossibleError(
            "post-selection impossible for this intermediate measurement "
            f"(denominator {denominator:.3e})"
        )
    entries = tuple(
        (v, w / denominator) for v, w in zip(obs.eigenvalues, weights)
    )
    return OutcomeDistribution(obs.label, entries)


def weak_value(tsv: TwoStateVector, op: LinearOperator | np.ndarray) -> complex:
    """Weak value <backward|A|forward> / <backward|forward>.

    Defined for arbitrary (not necessarily Hermitian) operators.  Swapping
    the forward and backward states conjugates the weak value of a Hermitian
    operator.

    Raises
    ------
    WeakValueUndefinedError
        If |<backward|forward>| is below ``ZERO_OVERLAP_ATOL``.
    """
    matrix = op.matrix if isinstance(op, LinearOperator) else np.asarray(op, dtype=np.complex128)
    if matrix.shape != (tsv.dim, tsv.dim):
        raise DimensionMismatchError(
            f"operator shape {matrix.shape} does not match two-state dim {tsv.dim}"
        )
    overlap = complex(np.vdot(tsv.backward.amplitudes, tsv.forward.amplitudes))
    if abs(overlap) <= ZERO_OVERLAP_ATOL:
        raise WeakValueUndefinedError(
            "weak value undefined: forward and backward states are orthogonal"
        )
    return _cross_amplitude(tsv, matrix) / overlap


def projector_weak_values(tsv: TwoStateVector, obs: Observable) -> tuple:
    """Weak value of each eigenprojector of ``obs``, as (eigenvalue, weak
    value) pairs.  Over any complete projector set these sum to 1."""
    return tuple(
        (v, weak_value(tsv, LinearOperator(p)))
        for v, p in zip(obs.eigenvalues, obs.projectors)
    )


def elements_of_reality(tsv: TwoStateVector, obs: Observable) -> float | None:
    """The eigenvalue that an intermediate measurement of ``obs`` would yield
    with certainty (conditional probability >= 1 - 1e-10), or ``None`` if no
    outcome is certain.  Propagates :func:`abl_distribution` errors."""
    dist = abl_distribution(tsv, obs)
    for v, p in dist.entries:
        if p >= 1.0 - CERTAINTY_ATOL:
            return v
    return None


def final_outcome_probabilities(
    psi1: StateVector, intermediate: Observable, final: Observable
) -> OutcomeDistribution:
    """Distribution of the final measurement's outcomes given that the
    intermediate measurement was actually performed.

    Each intermediate outcome ``a_j`` occurs with weight ``<psi1|P_j|psi1>``
    and leaves the projected (Lueders) state ``P_j|psi1>/||.||``; the final
    outcome ``f_k`` then has probability ``<psi_j|P_fk|psi_j>``.  Branches of
    zero weight contribute nothing.
    """
    if psi1.dim != intermediate.dim or psi1.dim != final.dim:
        raise DimensionMismatchError("state and observables must share one dimension")
    totals = np.zeros(len(final.eigenvalues), dtype=np.float64)
    for proj in intermediate.projectors:
        weight = _expectation(psi1, proj)
        if weight <= 0.0:
            continue
        branch = proj @ psi1.amplitudes
        collapsed = StateVector(branch / np.linalg.norm(branch))
        for k, final_proj in enumerate(final.projectors):
            totals[k] += weight * _expectation(collapsed, final_proj)
    entries = tuple((v, float(p)) for v, p in zip(final.eigenvalues, totals))
    return OutcomeDistribution(final.label, entries)


def decomposition_check(
    psi1: StateVector,
    intermediate: Observable,
    final: Observable,
    outcome_index: int,
    *,
    ignore_disturbance: bool = False,
) -> tuple:
    """Decompose an intermediate outcome probability over the final outcomes.

    Returns ``(lhs, rhs)`` where

    * ``lhs = sum_k Prob(f_k) * Prob(a_i | f_k)``, with the conditionals
      from :func:`abl_distribution` for each final eigenstate, and the
      weights ``Prob(f_k)`` from :func:`final_outcome_probabilities`
      (i.e. computed with the intermediate measurement performed);
    * ``rhs`` is the plain Born probability of ``a_i`` for ``psi1``.

    With correct weights the two sides agree identically.  Setting
    ``ignore_disturbance=True`` instead takes the weights from the
    undisturbed evolution (no intermediate measurement), which is the
    bookkeeping error this check exposes: the sides then disagree for
    generic configurations.

    The final measurement must be complete (rank-1 projectors); final
    outcomes of probability below 1e-12 are skipped, so their conditionals
    are never evaluated.
    """
    rhs_dist = born_distribution(psi1, intermediate)
    if not 0 <= outcome_index < len(rhs_dist.entries):
        raise ValidationError(
            f"outcome_index {outcome_index} out of range for "
            f"{len(rhs_dist.entries)} intermediate outcomes"
        )
    rhs = rhs_dist.entries[outcome_index][1]

    if ignore_disturbance:
        weights = born_distribution(psi1, final)
    else:
        weights = final_outcome_probabilities(psi1, intermediate, final)

    lhs = 0.0
    for (f_value, f_prob), f_proj in zip(weights.entries, final.projectors):
        if f_prob <= 1e-12:
            continue
        backward = rank_one_vector(f_proj)
        conditional = abl_distribution(TwoStateVector(psi1, backward), intermediate)
        lhs += f_prob * conditional.entries[outcome_index][1]
    return lhs, rhs
