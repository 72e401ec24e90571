"""Seeded Monte Carlo engine for pre-/post-selection measurement protocols.

Each trial prepares a scenario's initial state (recorded as the ``t1``
event), optionally performs the scenario's intermediate ideal measurement
(``t`` event), and performs the final measurement (``t2`` event).
Post-selection then keeps the sub-ensemble whose final outcome matches a
target value; the frequencies inside that sub-ensemble are what the analytic
conditional (ABL) distributions predict.

Randomness is counter-based and platform-independent: the per-trial seed is
``stable_hash64(master_seed, trial_id)`` (SHA-256 based), and draw ``k`` of a
trial is a pure function of ``(trial_seed, k)``.  Trials therefore form
independent streams; executing them on any number of workers yields
bit-identical ensembles.  Every ideal measurement consumes exactly one
uniform variate, mapped to an outcome by inverse-CDF over the observable's
eigenvalues in ascending order.

The weak-measurement readout is not sampled: the post-selected pointer wave
function is computed exactly on a grid (see :func:`weak_measure_ensemble`),
which both exhibits the first-order mean-shift law and exposes its
higher-order corrections.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .hilbert import (
    LinearOperator,
    Observable,
    StateVector,
    ValidationError,
    rank_one_vector,
    spectral_decompose,
)
from .twostate import PostSelectionImpossibleError, TwoStateVector

if TYPE_CHECKING:  # pragma: no cover
    from .scenarios import Scenario

__all__ = [
    "stable_hash64",
    "trial_seed_for",
    "RandomStream",
    "MeasurementEvent",
    "TrialRecord",
    "EnsembleRecord",
    "PointerReport",
    "ideal_measure",
    "run_ensemble",
    "postselect",
    "weak_measure_ensemble",
    "ensemble_to_csv",
    "pointer_to_csv",
    "ENSEMBLE_CSV_HEADER",
]

_MASK64 = (1 << 64) - 1


def stable_hash64(*parts: int) -> int:
    """Platform-independent 64-bit hash of a tuple of integers.

    Each part is encoded as 16 signed little-endian bytes and fed to
    SHA-256; the first 8 digest bytes, read little-endian, are the hash.
    """
    h = hashlib.sha256()
    for part in parts:
        h.update(int(part).to_bytes(16, "little", signed=True))
    return int.from_bytes(h.digest()[:8], "little")


def trial_seed_for(master_seed: int, trial_id: int) -> int:
    """Derive the independent per-trial seed from the ensemble master seed."""
    return stable_hash64(master_seed, trial_id)


class RandomStream:
    """Counter-based uniform source: draw ``k`` is a pure function of
    ``(key, k)``, so streams with distinct keys never overlap and replaying
    a stream reproduces it bit-exactly."""

    __slots__ = ("_key", "_counter")

    def __init__(self, key: int):
        self._key = int(key) & _MASK64
        self._counter = 0

    def uniform(self) -> float:
        """Next uniform variate in [0, 1), with 53 random bits."""
        bits = stable_hash64(self._key, self._counter)
        self._counter += 1
        return (bits >> 11) * 2.0 ** -53


@dataclass(frozen=True, slots=True)
class MeasurementEvent:
    """One recorded measurement: when, of what, with which eigenvalue.

    The ``t1`` event records the (deterministic) preparation as outcome 1.0
    of the projective test onto the scenario's initial state.
    """

    time_label: str
    observable_label: str
    outcome: float


@dataclass(frozen=True, slots=True)
class TrialRecord:
    """All events of a single trial, ordered t1 < t < t2, at most one event
    per time label, plus the seed that reproduces the trial."""

    trial_id: int
    events: tuple
    trial_seed: int

    def outcome_at(self, time_label: str) -> float | None:
        for event in self.events:
            if event.time_label == time_label:
                return event.outcome
        return None


@dataclass(frozen=True, slots=True)
class EnsembleRecord:
    """An ordered collection of trials produced from one (scenario,
    master_seed) pair; sub-ensembles keep trial order and seeds."""

    scenario_label: str
    master_seed: int
    trials: tuple

    @property
    def size(self) -> int:
        return len(self.trials)


# ---------------------------------------------------------------------------
# Ideal (projective) measurement
# ---------------------------------------------------------------------------

def _branch_probabilities(state: StateVector, obs: Observable) -> list:
    """Born probability of each eigenvalue, in ascending-eigenvalue order."""
    v = state.amplitudes
    probs = []
    for proj in obs.projectors:
        p = float(np.real(np.vdot(v, proj @ v)))
        probs.append(max(p, 0.0))
    return probs


def _pick_index(probs: list, u: float) -> int:
    """Inverse-CDF outcome selection from a single uniform variate."""
    cumulative = 0.0
    last_positive = 0
    for i, p in enumerate(probs):
        if p > 0.0:
            last_positive = i
        cumulative += p
        if u < cumulative:
            return i
    return last_positive


def _collapse(state: StateVector, projector: np.ndarray) -> StateVector:
    branch = projector @ state.amplitudes
    return StateVector(branch / np.linalg.norm(branch))


def ideal_measure(
    state: StateVector, obs: Observable, stream: RandomStream
) -> tuple:
    """Perform one ideal measurement, consuming one uniform variate.

    The outcome is sampled with its Born probability; the returned state is
    the Lueders projection ``P|psi> / ||P|psi>||``, which preserves coherence
    within degenerate eigenspaces (so e.g. measuring a sum observable on a
    state inside one of its eigenspaces leaves the state untouched).

    Returns
    -------
    (outcome, collapsed) : (float, StateVector)
    """
    if state.dim != obs.dim:
        raise ValidationError(
            f"state dim {state.dim} != observable dim {obs.dim}"
        )
    probs = _branch_probabilities(state, obs)
    index = _pick_index(probs, stream.uniform())
    return obs.eigenvalues[index], _collapse(state, obs.projectors[index])


# ---------------------------------------------------------------------------
# Ensemble protocol
# ---------------------------------------------------------------------------

class _MeasurementTree:
    """Outcome probabilities and collapsed states precomputed once per
    ensemble.  Built from the same branch/pick/collapse helpers as
    :func:`ideal_measure`, so sampling through the tree is bit-identical to
    measuring trial by trial."""

    def __init__(self, scenario: "Scenario"):
        self.scenario = scenario
        pre = scenario.pre_state
        if scenario.intermediate is not None:
            self.t_probs = _branch_probabilities(pre, scenario.intermediate)
            self.t_states = [
                _collapse(pre, proj) if p > 0.0 else None
                for p, proj in zip(self.t_probs, scenario.intermediate.projectors)
            ]
            self.final_probs = [
                _branch_probabilities(state, scenario.final)
                if state is not None
                else None
                for state in self.t_states
            ]
        else:
            self.t_probs = None
            self.final_probs_direct = _branch_probabilities(pre, scenario.final)

    def run_trial(self, trial_id: int, master_seed: int) -> TrialRecord:
        seed = trial_seed_for(master_seed, trial_id)
        stream = RandomStream(seed)
        scenario = self.scenario
        events = [
            MeasurementEvent("t1", f"prepare[{scenario.label}]", 1.0)
        ]
        if self.t_probs is not None:
            t_index = _pick_index(self.t_probs, stream.uniform())
            events.append(
                MeasurementEvent(
                    "t",
                    scenario.intermediate.label,
                    scenario.intermediate.eigenvalues[t_index],
                )
            )
            final_probs = self.final_probs[t_index]
        else:
            final_probs = self.final_probs_direct
        f_index = _pick_index(final_probs, stream.uniform())
        events.append(
            MeasurementEvent(
                "t2", scenario.final.label, scenario.final.eigenvalues[f_index]
            )
        )
        return TrialRecord(trial_id, tuple(events), seed)


def run_ensemble(
    scenario: "Scenario",
    n_trials: int,
    master_seed: int,
    workers: int = 1,
) -> EnsembleRecord:
    """Run the prepare / (measure at t) / measure at t2 protocol ``n_trials``
    times.

    Fully deterministic given ``(scenario, n_trials, master_seed)``: trials
    are independent counter-based streams, so any ``workers`` count produces
    a bit-identical :class:`EnsembleRecord` (results are merged in trial-id
    order).
    """
    if n_trials < 1:
        raise ValidationError(f"n_trials must be >= 1, got {n_trials}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    tree = _MeasurementTree(scenario)

    if workers == 1 or n_trials < 2 * workers:
        trials = [tree.run_trial(i, master_seed) for i in range(n_trials)]
    else:
        chunk = -(-n_trials // workers)
        ranges = [
            range(start, min(start + chunk, n_trials))
            for start in range(0, n_trials, chunk)
        ]

        def run_chunk(ids):
            return [tree.run_trial(i, master_seed) for i in ids]

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, ranges))
        trials = [trial for part in parts for trial in part]

    return EnsembleRecord(scenario.label, master_seed, tuple(trials))


def postselect(rec: EnsembleRecord, final_outcome: float, atol: float = 1e-9) -> EnsembleRecord:
    """Sub-ensemble whose ``t2`` outcome equals ``final_outcome``; trial
    order and seeds are preserved.  An empty selection is returned as an
    empty record (the caller decides whether that is an error)."""
    kept = []
    for trial in rec.trials:
        outcome = trial.outcome_at("t2")
        if outcome is None:
            raise ValidationError(
                f"trial {trial.trial_id} has no t2 event; cannot post-select"
            )
        if abs(outcome - final_outcome) <= atol:
            kept.append(trial)
    return EnsembleRecord(rec.scenario_label, rec.master_seed, tuple(kept))


# ---------------------------------------------------------------------------
# Weak-measurement pointer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointerReport:
    """Post-selected pointer readout of a weak measurement.

    ``probability_density`` is |phi'(x)|^2 normalized by trapezoidal
    quadrature on ``grid``; ``mean_shift`` is its first moment.  For weak
    coupling the mean shift approaches ``coupling * Re(weak value)``.
    """

    grid: np.ndarray
    probability_density: np.ndarray
    mean_shift: float
    coupling: float
    pointer_width: float

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=np.float64)
        density = np.asarray(self.probability_density, dtype=np.float64)
        if grid.shape != density.shape or grid.ndim != 1:
            raise ValidationError("grid and density must be equal-length 1-D arrays")
        if np.any(density < -1e-12):
            raise ValidationError("pointer density has negative entries")
        total = float(np.trapezoid(density, grid))
        if abs(total - 1.0) > 1e-6:
            raise ValidationError(f"pointer density integrates to {total!r}, not 1")
        grid.setflags(write=False)
        density.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "probability_density", density)


def weak_measure_ensemble(
    scenario: "Scenario",
    op: LinearOperator,
    coupling: float,
    pointer_width: float,
    grid_points: int = 2048,
) -> PointerReport:
    """Exact post-selected pointer distribution of a weakly coupled
    measurement of ``op`` on a post-selecting scenario.

    The pointer starts as a Gaussian wave packet of position spread
    ``pointer_width`` centered at 0; the von Neumann coupling translates the
    packet by ``coupling * lambda_i`` within each eigenbranch of ``op``, and
    post-selection superposes the branches with amplitudes
    ``c_i = <backward|P_i|forward>``:

        phi'(x) = sum_i c_i * phi(x - coupling * lambda_i)

    computed on a uniform grid spanning +-8 pointer widths.

    Raises
    ------
    PostSelectionImpossibleError
        If every branch amplitude vanishes.
    ValidationError
        If the scenario has no post-selection target, or parameters are
        out of range.
    """
    if coupling <= 0.0:
        raise ValidationError(f"coupling must be > 0, got {coupling}")
    if pointer_width <= 0.0:
        raise ValidationError(f"pointer_width must be > 0, got {pointer_width}")
    if grid_points < 16:
        raise ValidationError(f"grid_points must be >= 16, got {grid_points}")
    if scenario.target_final_outcome is None:
        raise ValidationError(
            f"scenario {scenario.label!r} has no post-selection target"
        )

    backward = rank_one_vector(
        scenario.final.projector_for(scenario.target_final_outcome)
    )
    tsv = TwoStateVector(scenario.pre_state, backward)
    obs = spectral_decompose(op)
    amplitudes = [
        complex(np.vdot(tsv.backward.amplitudes, proj @ tsv.forward.amplitudes))
        for proj in obs.projectors
    ]
    if sum(abs(c) ** 2 for c in amplitudes) <= 1e-24:
        raise PostSelectionImpossibleError(
            "post-selection impossible: all weak-measurement branch amplitudes vanish"
        )

    sigma = pointer_width
    x = np.linspace(-8.0 * sigma, 8.0 * sigma, grid_points)
    # Gaussian wave function whose |phi|^2 has standard deviation sigma.
    prefactor = (2.0 * np.pi * sigma**2) ** -0.25

    def packet(center: float) -> np.ndarray:
        return prefactor * np.exp(-((x - center) ** 2) / (4.0 * sigma**2))

    wave = np.zeros_like(x, dtype=np.complex128)
    for c, lam in zip(amplitudes, obs.eigenvalues):
        wave += c * packet(coupling * lam)
    density = np.abs(wave) ** 2
    total = float(np.trapezoid(density, x))
    density = density / total
    mean = float(np.trapezoid(x * density, x))
    return PointerReport(x, density, mean, coupling, pointer_width)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

ENSEMBLE_CSV_HEADER = "trial_id,t1_outcome,t_observable,t_outcome,t2_outcome,trial_seed"


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def ensemble_to_csv(rec: EnsembleRecord) -> str:
    """Line-oriented CSV of an ensemble; the two ``t`` columns are empty for
    trials without an intermediate measurement."""
    lines = [ENSEMBLE_CSV_HEADER]
    for trial in rec.trials:
        t_label = ""
        t_outcome = ""
        for event in trial.events:
            if event.time_label == "t":
                t_label = event.observable_label
                t_outcome = _fmt(event.outcome)
        t1 = trial.outcome_at("t1")
        t2 = trial.outcome_at("t2")
        lines.append(
            f"{trial.trial_id},{_fmt(t1)},{t_label},{t_outcome},{_fmt(t2)},{trial.trial_seed}"
        )
    return "\n".join(lines) + "\n"


def pointer_to_csv(report: PointerReport) -> str:
    """Plot-ready CSV of the pointer density, columns ``x, density``."""
    lines = ["x,density"]
    for x, d in zip(report.grid, report.probability_density):
        lines.append(f"{_fmt(x)},{_fmt(d)}")
    return "\n".join(lines) + "\n"
