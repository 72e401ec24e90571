"""Canned constructions of the package's benchmark experiments.

Each constructor returns a :class:`Scenario`: an initial state, an optional
intermediate observable, a final observable, and either a post-selection
target (for conditional-frequency experiments) or a :class:`RelationCheck`
(for outcome-relation experiments evaluated on the full ensemble).

The families:

``sharp_shanks(theta_ab, theta_bc)``
    Three consecutive spin-component measurements along coplanar axes with
    the given relative angles; post-selects on the final "up".  The ABL
    conditionals for this chain decompose the undisturbed Born probability
    exactly when the final-outcome weights account for the intermediate
    measurement.

``spin_counterexample(theta, with_intermediate)``
    Spin prepared and post-selected in the same z-up state, intermediate
    measurement along a tilted axis.  Without the intermediate measurement
    the post-selection always succeeds (the pre-selected-only and pre/post-
    selected ensembles coincide); with it, the conditional "up" frequency
    follows the ABL value, not the pre-selected-only Born value: a fixed
    past cannot stand in for a fixed future.

``three_box(search)``
    One particle in three boxes, prepared in (|A>+|B>+|C>)/sqrt(3) and
    post-selected on (|A>+|B>-|C>)/sqrt(3).  Opening box A (or box B) then
    finds the particle there with certainty; the box projectors' weak
    values are (1, 1, -1).

``singlet_relations(variant)``
    Two spins in the singlet state: component anticorrelations, the two
    null sum observables measured in sequence on a single pair, the
    two-time split variants, and the "incompatible" run in which an early
    x-component measurement destroys the y-sum relation half the time.

``single_particle_y(variant)``
    One spin prepared along +y: a repeated x measurement agrees with
    itself, and an undisturbed y measurement gives +1 with certainty.

``double_sigma_x()``
    Two successive x-component measurements on a z-up spin; the joint
    (+1, +1) frequency is 1/2 because the second measurement repeats the
    first, not 1/4 as independence-style reasoning would suggest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert import (
    LinearOperator,
    Observable,
    StateVector,
    ValidationError,
    basis_state,
    identity_operator,
    pauli,
    rank_one_vector,
    spectral_decompose,
    spin_observable,
    spin_state,
    tensor_product,
)
from .simulate import TrialRecord
from .twostate import TwoStateVector

__all__ = [
    "RelationCheck",
    "Scenario",
    "sharp_shanks",
    "spin_counterexample",
    "three_box",
    "three_box_two_state",
    "three_box_projectors",
    "singlet_state",
    "singlet_relations",
    "single_particle_y",
    "double_sigma_x",
    "SINGLET_VARIANTS",
    "SINGLE_PARTICLE_VARIANTS",
]


@dataclass(frozen=True)
class RelationCheck:
    """A per-trial predicate over the recorded outcomes plus its analytic
    satisfaction probability.

    kinds:
      ``sum``    outcome(t) + outcome(t2) == targets[0]
      ``pair``   outcome(t) == targets[0] and outcome(t2) == targets[1]
      ``equal``  outcome(t) == outcome(t2)
      ``final``  outcome(t2) == targets[0]
    """

    kind: str
    targets: tuple
    expected_probability: float
    description: str

    def holds(self, trial: TrialRecord, atol: float = 1e-9) -> bool:
        t = trial.outcome_at("t")
        t2 = trial.outcome_at("t2")
        if self.kind == "sum":
            return t is not None and abs(t + t2 - self.targets[0]) <= atol
        if self.kind == "pair":
            return (
                t is not None
                and abs(t - self.targets[0]) <= atol
                and abs(t2 - self.targets[1]) <= atol
            )
        if self.kind == "equal":
            return t is not None and abs(t - t2) <= atol
        if self.kind == "final":
            return abs(t2 - self.targets[0]) <= atol
        raise ValidationError(f"unknown relation kind {self.kind!r}")


@dataclass(frozen=True)
class Scenario:
    """A runnable prepare / (measure at t) / measure at t2 protocol.

    ``target_final_outcome`` marks post-selecting scenarios; for those the
    final measurement must be complete (rank-1 projectors) so the selected
    sub-ensemble corresponds to a definite backward state.  Relation
    scenarios leave the target ``None`` and attach a :class:`RelationCheck`
    evaluated on every trial instead.
    """

    label: str
    pre_state: StateVector
    intermediate: Observable | None
    final: Observable
    target_final_outcome: float | None
    notes: str = ""
    relation: RelationCheck | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        dim = self.pre_state.dim
        if self.final.dim != dim:
            raise ValidationError("final observable dimension mismatch")
        if self.intermediate is not None and self.intermediate.dim != dim:
            raise ValidationError("intermediate observable dimension mismatch")
        if self.target_final_outcome is not None:
            target = float(self.target_final_outcome)
            self.final.projector_for(target)  # raises if not an eigenvalue
            if any(rank != 1 for rank in self.final.ranks()):
                raise ValidationError(
                    "post-selecting scenarios need a complete final "
                    "measurement (all projectors rank 1)"
                )
            object.__setattr__(self, "target_final_outcome", target)

    @property
    def two_state(self) -> TwoStateVector:
        """Forward/backward pair of a post-selecting scenario."""
        if self.target_final_outcome is None:
            raise ValidationError(
                f"scenario {self.label!r} has no post-selection target"
            )
        backward = rank_one_vector(
            self.final.projector_for(self.target_final_outcome)
        )
        return TwoStateVector(self.pre_state, backward)


# ---------------------------------------------------------------------------
# Spin chains
# ---------------------------------------------------------------------------

def _deg(rad: float) -> float:
    return math.degrees(rad)


def sharp_shanks(theta_ab: float, theta_bc: float) -> Scenario:
    """Consecutive spin measurements along coplanar axes a, b, c (angles in
    radians): prepare up along a, measure along b at t, measure along c at
    t2, post-select on "up" along c."""
    final_angle = theta_ab + theta_bc
    return Scenario(
        label=f"sharp-shanks[{_deg(theta_ab):g}deg,{_deg(theta_bc):g}deg]",
        pre_state=spin_state(0.0),
        intermediate=spin_observable(theta_ab),
        final=spin_observable(final_angle),
        target_final_outcome=1.0,
        notes=(
            "three-axis spin chain; the post-selected frequency of the "
            "intermediate 'up' follows the conditional (ABL) value"
        ),
        params={"theta_ab_rad": float(theta_ab), "theta_bc_rad": float(theta_bc)},
    )


def spin_counterexample(theta: float, with_intermediate: bool = True) -> Scenario:
    """Spin found up along z at both ends, optionally measured along a
    tilted axis (angle ``theta`` from z) in between.

    Without the intermediate measurement the final measurement repeats the
    preparation, so post-selection always succeeds and the pre-selected-only
    and pre/post-selected ensembles are identical.  With it, the
    post-selected frequency of tilted-up is the conditional value
    cos^4(theta/2) / (cos^4(theta/2) + sin^4(theta/2)), which differs from
    the pre-selected-only cos^2(theta/2).
    """
    return Scenario(
        label=(
            f"spin-counterexample[{_deg(theta):g}deg,"
            f"{'with' if with_intermediate else 'no'}-intermediate]"
        ),
        pre_state=spin_state(0.0),
        intermediate=spin_observable(theta) if with_intermediate else None,
        final=spin_observable(0.0),
        target_final_outcome=1.0,
        notes=(
            "pre- and post-selected in the same z-up state; conditional "
            "statistics depend on whether the intermediate measurement ran"
        ),
        params={
            "theta_rad": float(theta),
            "with_intermediate": float(bool(with_intermediate)),
        },
    )


def double_sigma_x() -> Scenario:
    """Two successive x-component measurements on a z-up spin, no
    post-selection.  The second measurement repeats the first, so the joint
    (+1, +1) frequency is 1/2; treating the two as independent would give
    the wrong value 1/4."""
    return Scenario(
        label="double-sigma-x",
        pre_state=spin_state(0.0),
        intermediate=spin_observable(math.pi / 2.0),
        final=spin_observable(math.pi / 2.0),
        target_final_outcome=None,
        notes="repeated x measurement; outcomes always agree",
        relation=RelationCheck(
            kind="pair",
            targets=(1.0, 1.0),
            expected_probability=0.5,
            description="both x outcomes +1",
        ),
    )


# ---------------------------------------------------------------------------
# Three boxes
# ---------------------------------------------------------------------------

def three_box_two_state() -> TwoStateVector:
    """Forward (|A>+|B>+|C>)/sqrt(3) and backward (|A>+|B>-|C>)/sqrt(3)."""
    forward = StateVector.normalized([1.0, 1.0, 1.0])
    backward = StateVector.normalized([1.0, 1.0, -1.0])
    return TwoStateVector(forward, backward)


def three_box_projectors() -> dict:
    """Projectors onto the three boxes, keyed "A", "B", "C"."""
    out = {}
    for index, name in enumerate("ABC"):
        matrix = np.zeros((3, 3), dtype=np.complex128)
        matrix[index, index] = 1.0
        out[name] = LinearOperator(matrix, f"P_{name}")
    return out


def _three_box_final() -> Observable:
    """Complete final basis: Gram-Schmidt over (backward, |A>, |B>), in that
    order.  Eigenvalue 0 tags the backward state ("post-state found")."""
    backward = three_box_two_state().backward.amplitudes
    raw = [backward, basis_state(3, 0).amplitudes, basis_state(3, 1).amplitudes]
    basis = []
    for vec in raw:
        v = vec.astype(np.complex128)
        for b in basis:
            v = v - np.vdot(b, v) * b
        basis.append(v / np.linalg.norm(v))
    projectors = tuple(np.outer(b, b.conj()) for b in basis)
    return Observable((0.0, 1.0, 2.0), projectors, "three-box-final")


def three_box(search: str = "A") -> Scenario:
    """Three-box scenario with the intermediate "open box ``search``"
    measurement (eigenvalue 1 = found there, 0 = found elsewhere).

    Opening box A or box B finds the particle with certainty in the
    post-selected sub-ensemble, even though the two certainties refer to
    different intermediate measurements on the same two-state pair.  The
    "found elsewhere" projector has rank 2 on purpose: refining it to
    single boxes is a different measurement and destroys the interference
    that produces the certainty.
    """
    search = search.upper()
    if search not in ("A", "B"):
        raise ValidationError(f"search must be 'A' or 'B', got {search!r}")
    boxes = three_box_projectors()
    found = boxes[search].matrix
    elsewhere = np.eye(3, dtype=np.complex128) - found
    intermediate = Observable(
        (0.0, 1.0), (elsewhere, found), f"search-{search}"
    )
    return Scenario(
        label=f"three-box[search-{search}]",
        pre_state=three_box_two_state().forward,
        intermediate=intermediate,
        final=_three_box_final(),
        target_final_outcome=0.0,
        notes=(
            f"searching box {search} finds the particle with certainty in "
            "the post-selected sub-ensemble"
        ),
        params={"search": float(ord(search) - ord("A"))},
    )


# ---------------------------------------------------------------------------
# Singlet pair
# ---------------------------------------------------------------------------

def singlet_state() -> StateVector:
    """(|up down> - |down up>)/sqrt(2), particle-1-major ordering."""
    up = basis_state(2, 0)
    down = basis_state(2, 1)
    ud = tensor_product(up, down).amplitudes
    du = tensor_product(down, up).amplitudes
    return StateVector.normalized(ud - du)


def _one_particle(op: LinearOperator, particle: int) -> LinearOperator:
    identity = identity_operator(2)
    if particle == 1:
        return op.tensor(identity)
    return identity.tensor(op)


def _component_observable(axis: str, particle: int) -> Observable:
    op = _one_particle(pauli(axis), particle)
    return spectral_decompose(op, label=f"sigma_{particle}{axis}")


def _sum_observable(axis: str) -> Observable:
    op = _one_particle(pauli(axis), 1) + _one_particle(pauli(axis), 2)
    return spectral_decompose(op, label=f"sigma_1{axis}+sigma_2{axis}")


SINGLET_VARIANTS = (
    "components-x",
    "sums-sequential",
    "two-time",
    "two-time-xx",
    "two-time-yy",
    "incompatible",
)


def singlet_relations(variant: str):
    """Singlet-pair relation scenarios; see ``SINGLET_VARIANTS``.

    ``two-time`` returns the pair of split-time scenarios (they cannot be
    co-run on one system); every other variant returns a single scenario.
    """
    singlet = singlet_state()
    if variant == "components-x":
        # Joint measurement of the commuting pair realized sequentially:
        # sigma_1x at t, sigma_2x at t2.
        return Scenario(
            label="singlet[components-x]",
            pre_state=singlet,
            intermediate=_component_observable("x", 1),
            final=_component_observable("x", 2),
            target_final_outcome=None,
            notes="x components of a singlet are always opposite",
            relation=RelationCheck(
                "sum", (0.0,), 1.0, "x-component outcomes sum to 0"
            ),
        )
    if variant == "sums-sequential":
        return Scenario(
            label="singlet[sums-sequential]",
            pre_state=singlet,
            intermediate=_sum_observable("x"),
            final=_sum_observable("y"),
            target_final_outcome=None,
            notes=(
                "both sum observables vanish on the singlet and can be "
                "measured in sequence on a single pair without disturbance"
            ),
            relation=RelationCheck(
                "pair", (0.0, 0.0), 1.0, "both component sums are 0"
            ),
        )
    if variant == "two-time":
        return (
            singlet_relations("two-time-xx"),
            singlet_relations("two-time-yy"),
        )
    if variant == "two-time-xx":
        return Scenario(
            label="singlet[two-time-xx]",
            pre_state=singlet,
            intermediate=_component_observable("x", 1),
            final=_component_observable("x", 2),
            target_final_outcome=None,
            notes=(
                "particle 1 measured early, particle 2 late; the split-time "
                "x relation holds but cannot be co-run with the y variant"
            ),
            relation=RelationCheck(
                "sum", (0.0,), 1.0, "split-time x outcomes sum to 0"
            ),
        )
    if variant == "two-time-yy":
        return Scenario(
            label="singlet[two-time-yy]",
            pre_state=singlet,
            intermediate=_component_observable("y", 2),
            final=_component_observable("y", 1),
            target_final_outcome=None,
            notes=(
                "particle 2 measured early, particle 1 late; the split-time "
                "y relation holds but cannot be co-run with the x variant"
            ),
            relation=RelationCheck(
                "sum", (0.0,), 1.0, "split-time y outcomes sum to 0"
            ),
        )
    if variant == "incompatible":
        # Measuring sigma_1x first destroys the y-sum relation: afterwards
        # sigma_1y + sigma_2y = 0 only half the time.
        return Scenario(
            label="singlet[incompatible]",
            pre_state=singlet,
            intermediate=_component_observable("x", 1),
            final=_sum_observable("y"),
            target_final_outcome=None,
            notes=(
                "an early x-component measurement disturbs the y components; "
                "the y-sum relation then holds with probability 1/2"
            ),
            relation=RelationCheck(
                "final", (0.0,), 0.5, "y components still sum to 0"
            ),
        )
    raise ValidationError(f"unknown singlet variant {variant!r}")


# ---------------------------------------------------------------------------
# Single particle prepared along +y
# ---------------------------------------------------------------------------

SINGLE_PARTICLE_VARIANTS = ("xx", "y")


def single_particle_y(variant: str) -> Scenario:
    """Single spin prepared along +y; see ``SINGLE_PARTICLE_VARIANTS``.

    ``xx``: measure the x component twice; undisturbed in between, the two
    outcomes agree with certainty.  ``y``: measure the y component once;
    the outcome is +1 with certainty.
    """
    plus_y = spin_state(math.pi / 2.0, math.pi / 2.0)
    if variant == "xx":
        return Scenario(
            label="single-particle-y[xx]",
            pre_state=plus_y,
            intermediate=spin_observable(math.pi / 2.0),
            final=spin_observable(math.pi / 2.0),
            target_final_outcome=None,
            notes="repeated x measurement on a +y spin; outcomes agree",
            relation=RelationCheck("equal", (), 1.0, "x outcomes are equal"),
        )
    if variant == "y":
        return Scenario(
            label="single-particle-y[y]",
            pre_state=plus_y,
            intermediate=None,
            final=spin_observable(math.pi / 2.0, math.pi / 2.0),
            target_final_outcome=None,
            notes="undisturbed +y spin measured along y",
            relation=RelationCheck("final", (1.0,), 1.0, "y outcome is +1"),
        )
    raise ValidationError(f"unknown single-particle variant {variant!r}")
