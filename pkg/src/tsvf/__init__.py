"""Two-state-vector quantum toolkit.

Analytic calculators (Born, conditional/ABL, weak values, elements of
reality) and a seeded Monte Carlo engine for pre- and post-selected
measurement protocols, with canned benchmark scenarios and the statistics
to compare analytic predictions against empirical frequencies.
"""

from .hilbert import (
    DimensionMismatchError,
    LinearOperator,
    Observable,
    StateVector,
    TsvfError,
    ValidationError,
    basis_state,
    identity_operator,
    inner_product,
    pauli,
    projector_onto,
    rank_one_vector,
    spectral_decompose,
    spin_observable,
    spin_state,
    tensor_product,
)
from .scenarios import (
    RelationCheck,
    Scenario,
    double_sigma_x,
    sharp_shanks,
    single_particle_y,
    singlet_relations,
    singlet_state,
    spin_counterexample,
    three_box,
    three_box_projectors,
    three_box_two_state,
)
from .simulate import (
    EnsembleRecord,
    MeasurementEvent,
    PointerReport,
    RandomStream,
    TrialRecord,
    ensemble_to_csv,
    ideal_measure,
    pointer_to_csv,
    postselect,
    run_ensemble,
    stable_hash64,
    trial_seed_for,
    weak_measure_ensemble,
)
from .stats import (
    ChiSquarePreconditionError,
    ChiSquareResult,
    FrequencyReport,
    binary_report,
    chi_square_gof,
    chi_square_sf,
    frequencies,
    wilson_interval,
)
from .twostate import (
    OutcomeDistribution,
    PostSelectionImpossibleError,
    TwoStateVector,
    WeakValueUndefinedError,
    abl_distribution,
    born_distribution,
    decomposition_check,
    elements_of_reality,
    final_outcome_probabilities,
    projector_weak_values,
    weak_value,
)

__version__ = "0.1.0"
