"""Acceptance suite: one test per release criterion, run at the stated
trial counts, tolerances, and frozen seeds (master seed 42 unless a
criterion states otherwise).  Each test prints a single pass/fail line."""

import math

import numpy as np

from tsvf.cli import main
from tsvf.hilbert import (
    LinearOperator,
    StateVector,
    spectral_decompose,
    spin_observable,
    spin_state,
)
from tsvf.scenarios import (
    double_sigma_x,
    sharp_shanks,
    single_particle_y,
    singlet_relations,
    spin_counterexample,
    three_box,
    three_box_projectors,
)
from tsvf.simulate import postselect, run_ensemble, weak_measure_ensemble
from tsvf.stats import chi_square_gof, frequencies, wilson_interval
from tsvf.twostate import (
    TwoStateVector,
    abl_distribution,
    decomposition_check,
    weak_value,
)

SEED = 42
DEG60 = math.radians(60.0)


def report(number: int, description: str, passed: bool) -> None:
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {description}")
    assert passed, f"criterion {number} failed: {description}"


def chain_parts(theta_ab, theta_bc):
    return spin_state(0.0), spin_observable(theta_ab), spin_observable(theta_ab + theta_bc)


def up_index(observable):
    return observable.eigenvalues.index(1.0)


def test_criterion_01_decomposition_identity():
    psi1, mid, fin = chain_parts(DEG60, DEG60)
    lhs, rhs = decomposition_check(psi1, mid, fin, up_index(mid))
    at_60 = abs(lhs - 0.75) < 1e-12 and abs(rhs - 0.75) < 1e-12

    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        psi1, mid, fin = chain_parts(
            rng.uniform(0.0, 2.0 * math.pi), rng.uniform(0.0, 2.0 * math.pi)
        )
        lhs, rhs = decomposition_check(psi1, mid, fin, up_index(mid))
        worst = max(worst, abs(lhs - rhs))
    report(
        1,
        f"decomposition identity |lhs-rhs| < 1e-10 on 200 random angle pairs "
        f"(worst {worst:.2e}) and both sides 0.75 at (60, 60)",
        at_60 and worst < 1e-10,
    )


def test_criterion_02_erroneous_weights_demo():
    psi1, mid, fin = chain_parts(DEG60, DEG60)
    lhs, rhs = decomposition_check(
        psi1, mid, fin, up_index(mid), ignore_disturbance=True
    )
    report(
        2,
        f"undisturbed-weight bookkeeping yields {lhs:.6g} vs correct {rhs:.6g} "
        "(gap > 0.1)",
        abs(lhs - 0.6) < 1e-12 and abs(rhs - 0.75) < 1e-12 and abs(lhs - rhs) > 0.1,
    )


def test_criterion_03_conditional_frequency_matches_abl():
    scenario = sharp_shanks(DEG60, DEG60)
    rec = run_ensemble(scenario, 100000, SEED)
    sub = postselect(rec, scenario.target_final_outcome)
    analytic = abl_distribution(scenario.two_state, scenario.intermediate)
    freq = chi_square_gof(frequencies(sub, "t"), analytic)
    contained = freq.interval_contains(1.0, 0.9)
    p_ok = freq.chi_square.p_value > 0.001
    report(
        3,
        f"post-selected 'up' frequency {freq.point_estimates[1.0]:.5f} has 0.9 in "
        f"its Wilson interval and chi-square p = {freq.chi_square.p_value:.3g} > 0.001",
        contained and p_ok,
    )


def test_criterion_04_conditional_vs_undisturbed_discrimination():
    scenario = spin_counterexample(DEG60, True)
    rec = run_ensemble(scenario, 100000, SEED)
    sub = postselect(rec, scenario.target_final_outcome)
    freq = frequencies(sub, "t")
    in_conditional = freq.interval_contains(1.0, 0.9)
    out_undisturbed = not freq.interval_contains(1.0, 0.75)

    no_mid = spin_counterexample(DEG60, False)
    rec_no = run_ensemble(no_mid, 100000, SEED)
    all_selected = postselect(rec_no, no_mid.target_final_outcome).size == rec_no.size
    report(
        4,
        f"frequency {freq.point_estimates[1.0]:.5f} matches the conditional 0.9, "
        "excludes the undisturbed 0.75, and selection always succeeds without "
        "the intermediate measurement",
        in_conditional and out_undisturbed and all_selected,
    )


def test_criterion_05_three_box_certainties():
    analytic_ok = True
    empirical_ok = True
    for search in ("A", "B"):
        scenario = three_box(search)
        dist = abl_distribution(scenario.two_state, scenario.intermediate)
        analytic_ok &= abs(dist.probability_of(1.0) - 1.0) < 1e-10
        rec = run_ensemble(scenario, 100000, SEED)
        sub = postselect(rec, scenario.target_final_outcome)
        empirical_ok &= sub.size >= 10000
        empirical_ok &= all(t.outcome_at("t") == 1.0 for t in sub.trials)

    tsv = three_box("A").two_state
    boxes = three_box_projectors()
    values = [weak_value(tsv, boxes[k]) for k in "ABC"]
    weak_ok = (
        abs(values[0] - 1.0) < 1e-12
        and abs(values[1] - 1.0) < 1e-12
        and abs(values[2] + 1.0) < 1e-12
        and abs(sum(values) - 1.0) < 1e-12
    )
    report(
        5,
        "searched-box probability 1 (analytic and in every post-selected "
        "trial, >= 1e4 each) and box weak values (1, 1, -1) summing to 1",
        analytic_ok and empirical_ok and weak_ok,
    )


def test_criterion_06_relation_certainties():
    checks = [
        (singlet_relations("components-x"), 10000),
        (singlet_relations("sums-sequential"), 10000),
        (singlet_relations("two-time-xx"), 10000),
        (singlet_relations("two-time-yy"), 10000),
        (single_particle_y("xx"), 10000),
        (single_particle_y("y"), 10000),
    ]
    failures = []
    for scenario, n in checks:
        rec = run_ensemble(scenario, n, SEED)
        held = sum(1 for t in rec.trials if scenario.relation.holds(t))
        if held != n:
            failures.append((scenario.label, held, n))
    report(
        6,
        "component, sum, split-time, and single-particle relations hold in "
        "10000/10000 trials each",
        not failures,
    )


def test_criterion_07_repeated_x_joint_frequency():
    scenario = double_sigma_x()
    rec = run_ensemble(scenario, 100000, SEED)
    held = sum(1 for t in rec.trials if scenario.relation.holds(t))
    low, high = wilson_interval(held, rec.size)
    report(
        7,
        f"joint (+1, +1) frequency {held / rec.size:.5f} has 0.5 in its Wilson "
        "interval (the independence value 0.25 is wrong)",
        low <= 0.5 <= high,
    )


def test_criterion_08_time_symmetry_properties():
    rng = np.random.default_rng(SEED)

    def random_state(dim):
        vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return StateVector.normalized(vec)

    worst_abl = 0.0
    worst_weak = 0.0
    for trial in range(100):
        dim = int(rng.integers(2, 5))
        tsv = TwoStateVector(random_state(dim), random_state(dim))
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        hermitian = (m + m.conj().T) / 2.0
        obs = spectral_decompose(hermitian)

        a = abl_distribution(tsv, obs).probabilities
        b = abl_distribution(tsv.swapped(), obs).probabilities
        worst_abl = max(worst_abl, max(abs(x - y) for x, y in zip(a, b)))

        w = weak_value(tsv, LinearOperator(hermitian))
        w_swapped = weak_value(tsv.swapped(), LinearOperator(hermitian))
        worst_weak = max(worst_weak, abs(w_swapped - w.conjugate()))
    report(
        8,
        f"conditional distributions swap-invariant (worst {worst_abl:.2e}) and "
        f"weak values swap-conjugate (worst {worst_weak:.2e}) on 100 random "
        "two-state pairs, dims 2-4",
        worst_abl < 1e-12 and worst_weak < 1e-12,
    )


def test_criterion_09_weak_pointer_first_order_law():
    box_c = three_box_projectors()["C"]
    scenario = three_box("A")
    errors = []
    for ratio in (0.4, 0.2, 0.1, 0.05):
        pointer = weak_measure_ensemble(scenario, box_c, ratio, 1.0)
        errors.append(abs(pointer.mean_shift / ratio - (-1.0)))
    monotone = all(a > b for a, b in zip(errors, errors[1:]))
    report(
        9,
        f"pointer shift/g errors {['%.4f' % e for e in errors]} decrease "
        "monotonically and reach < 0.02 at g/sigma = 0.05",
        monotone and errors[-1] < 0.02,
    )


def test_criterion_10_reproducibility(capsys):
    argv = [
        "run",
        "sharp-shanks",
        "--theta-ab",
        "60",
        "--theta-bc",
        "60",
        "--trials",
        "20000",
        "--seed",
        "42",
        "--format",
        "json",
    ]
    code_a = main(list(argv))
    out_a = capsys.readouterr().out
    code_b = main(list(argv))
    out_b = capsys.readouterr().out
    code_c = main(list(argv) + ["--workers", "4"])
    out_c = capsys.readouterr().out
    identical = out_a == out_b == out_c and code_a == code_b == code_c == 0
    with capsys.disabled():
        report(
            10,
            "repeated run invocations and a 4-worker run produce byte-identical "
            "machine-format output",
            identical,
        )
