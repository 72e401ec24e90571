"""Command-line front end.

Subcommands
-----------
``run``             execute a named scenario, post-select, and compare the
                    empirical frequencies against the analytic prediction
``decomposition``   decompose an undisturbed outcome probability over final
                    outcomes, in corrected or deliberately erroneous mode
``weak``            exact weak-measurement pointer readout for the
                    three-box scenario, with plot-ready CSV
``abl``             conditional distribution, time-symmetry check, elements
                    of reality, and projector weak values for states and an
                    observable loaded from JSON files
``list-scenarios``  enumerate the registered scenarios and their options

Exit codes: 0 success / statistical pass, 1 statistical-check failure,
2 usage or parse error, 3 domain error (empty post-selection, vanishing
denominators).  Angles are taken in degrees on the command line and
converted once.  Machine formats (json, csv) print every number with 12
significant digits and contain no timestamps, so identical invocations
produce byte-identical output regardless of the worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import scenarios as sc
from .hilbert import (
    DimensionMismatchError,
    TsvfError,
    ValidationError,
    identity_operator,
    load_observable,
    load_state,
)
from .simulate import (
    ensemble_to_csv,
    pointer_to_csv,
    postselect,
    run_ensemble,
    weak_measure_ensemble,
)
from .stats import binary_report, chi_square_gof, frequencies, wilson_interval
from .twostate import (
    OutcomeDistribution,
    PostSelectionImpossibleError,
    TwoStateVector,
    WeakValueUndefinedError,
    abl_distribution,
    born_distribution,
    decomposition_check,
    elements_of_reality,
    projector_weak_values,
    weak_value,
)

__all__ = ["RunConfig", "cmd_run", "main", "console_main"]

EXIT_OK = 0
EXIT_STAT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

P_VALUE_FLOOR = 0.001
IDENTITY_DELTA = 1e-10

SCENARIO_HELP = {
    "sharp-shanks": "three coplanar spin axes; options --theta-ab --theta-bc (degrees)",
    "spin-counterexample": "same z-up pre/post selection; options --theta (degrees), --no-intermediate",
    "three-box": "three boxes with certainties; option --search {A,B}",
    "singlet": "singlet-pair relations; option --variant "
    "{components-x,sums-sequential,two-time-xx,two-time-yy,incompatible}",
    "single-particle-y": "+y spin relations; option --variant {xx,y}",
    "double-sigma-x": "repeated x measurement on z-up spin; no options",
}


@dataclass
class RunConfig:
    """Everything one ``run`` invocation needs; trials >= 1 and the scenario
    name must be registered."""

    scenario: str
    params: dict = field(default_factory=dict)
    trials: int = 100000
    seed: int = 42
    output_path: str | None = None
    fmt: str = "table"
    workers: int = 1
    dump_trials: str | None = None

    def validate(self):
        if self.scenario not in SCENARIO_HELP:
            raise ValidationError(f"unknown scenario {self.scenario!r}")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}")
        if self.fmt not in ("json", "csv", "table"):
            raise ValidationError(f"unknown format {self.fmt!r}")


# ---------------------------------------------------------------------------
# Deterministic emission helpers
# ---------------------------------------------------------------------------

def _num(x) -> str:
    """Machine-format number: 12 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


def render_json(value, indent: int = 0) -> str:
    """Minimal deterministic JSON emitter: insertion-ordered keys, floats at
    12 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [
            f"{inner}{json.dumps(str(k))}: {render_json(v, indent + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rows = [f"{inner}{render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    return _num(value)


def _emit(text: str, output_path: str | None) -> None:
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _distribution_rows(dist: OutcomeDistribution) -> list:
    return [
        {"eigenvalue": v, "probability": p} for v, p in dist.entries
    ]


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def _build_scenario(config: RunConfig):
    name, p = config.scenario, config.params
    if name == "sharp-shanks":
        return sc.sharp_shanks(
            math.radians(p.get("theta_ab_deg", 60.0)),
            math.radians(p.get("theta_bc_deg", 60.0)),
        )
    if name == "spin-counterexample":
        return sc.spin_counterexample(
            math.radians(p.get("theta_deg", 60.0)),
            bool(p.get("with_intermediate", True)),
        )
    if name == "three-box":
        return sc.three_box(p.get("search", "A"))
    if name == "singlet":
        variant = p.get("variant", "components-x")
        if variant == "two-time":
            raise ValidationError(
                "variant 'two-time' is a scenario pair; run two-time-xx and "
                "two-time-yy separately"
            )
        return sc.singlet_relations(variant)
    if name == "single-particle-y":
        return sc.single_particle_y(p.get("variant", "xx"))
    if name == "double-sigma-x":
        return sc.double_sigma_x()
    raise ValidationError(f"unknown scenario {name!r}")


def _verdict_against(
    analytic: OutcomeDistribution, report
) -> bool:
    """Pass iff every analytic probability lies in its empirical Wilson
    interval and the chi-square p-value clears the floor."""
    for v, p in analytic.entries:
        if not report.interval_contains(v, p):
            return False
    return report.chi_square is not None and report.chi_square.p_value > P_VALUE_FLOOR


def _empirical_rows(analytic: OutcomeDistribution, report) -> list:
    rows = []
    for v, _ in analytic.entries:
        key = report._key(v)
        count = report.counts.get(key, 0)
        if key in report.intervals:
            low, high = report.intervals[key]
        else:
            low, high = wilson_interval(0, report.total)
        estimate = report.point_estimates.get(key, 0.0)
        rows.append(
            {
                "eigenvalue": v,
                "count": count,
                "estimate": estimate,
                "ci_low": low,
                "ci_high": high,
            }
        )
    return rows


def cmd_run(config: RunConfig) -> int:
    """Run a scenario end to end and emit the comparison report.

    Post-selecting scenarios compare post-selected intermediate frequencies
    against the conditional (ABL) distribution; scenarios without an
    intermediate measurement compare final-outcome frequencies against the
    Born distribution; relation scenarios check the per-trial relation
    frequency against its analytic value (certainty relations must hold in
    every trial).
    """
    config.validate()
    scenario = _build_scenario(config)
    rec = run_ensemble(scenario, config.trials, config.seed, config.workers)
    if config.dump_trials:
        with open(config.dump_trials, "w", encoding="utf-8") as fh:
            fh.write(ensemble_to_csv(rec))

    note = scenario.notes
    extra = {}

    if scenario.target_final_outcome is not None:
        sub = postselect(rec, scenario.target_final_outcome)
        extra["post_selection"] = {
            "target": scenario.target_final_outcome,
            "selected": sub.size,
            "fraction": sub.size / rec.size,
        }
        if sub.size == 0:
            print(
                "error: post-selection produced an empty sub-ensemble "
                f"(target {scenario.target_final_outcome:g}, {rec.size} trials)",
                file=sys.stderr,
            )
            return EXIT_DOMAIN
        if scenario.intermediate is None:
            analytic = born_distribution(scenario.pre_state, scenario.final)
            report = frequencies(rec, "t2")
            if sub.size == rec.size:
                note = (
                    "post-selection always succeeds: the pre-selected-only and "
                    "pre- and post-selected ensembles are identical here"
                )
        else:
            analytic = abl_distribution(scenario.two_state, scenario.intermediate)
            report = frequencies(sub, "t")
        report = chi_square_gof(report, analytic)
        passed = _verdict_against(analytic, report)
    else:
        relation = scenario.relation
        held = sum(1 for trial in rec.trials if relation.holds(trial))
        analytic = OutcomeDistribution(
            f"relation[{relation.description}]",
            (
                (0.0, 1.0 - relation.expected_probability),
                (1.0, relation.expected_probability),
            ),
        )
        report = chi_square_gof(binary_report(held, rec.size), analytic)
        if relation.expected_probability >= 1.0 - 1e-12:
            passed = held == rec.size
        else:
            passed = _verdict_against(analytic, report)
        note = f"relation checked: {relation.description}"
        extra["relation"] = {"held": held, "fraction": held / rec.size}

    doc = {
        "scenario": config.scenario,
        "params": dict(config.params),
        "seed": config.seed,
        "trials": config.trials,
        "analytic": _distribution_rows(analytic),
        "empirical": _empirical_rows(analytic, report),
        "chi_square": {
            "stat": report.chi_square.statistic,
            "dof": report.chi_square.dof,
            "p": report.chi_square.p_value,
        },
        "verdict": "pass" if passed else "fail",
    }
    doc.update(extra)
    if note:
        doc["note"] = note

    _emit(_render_run(doc, config.fmt), config.output_path)
    return EXIT_OK if passed else EXIT_STAT_FAIL


def _render_run(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc) + "\n"
    if fmt == "csv":
        lines = ["eigenvalue,analytic_probability,count,estimate,ci_low,ci_high"]
        by_value = {row["eigenvalue"]: row for row in doc["empirical"]}
        for entry in doc["analytic"]:
            row = by_value[entry["eigenvalue"]]
            lines.append(
                ",".join(
                    _num(x)
                    for x in (
                        entry["eigenvalue"],
                        entry["probability"],
                        row["count"],
                        row["estimate"],
                        row["ci_low"],
                        row["ci_high"],
                    )
                )
            )
        return "\n".join(lines) + "\n"

    lines = [
        f"scenario : {doc['scenario']}  {_params_text(doc['params'])}",
        f"trials   : {doc['trials']}   seed: {doc['seed']}",
        "",
        f"{'eigenvalue':>10}  {'analytic':>10}  {'count':>8}  {'estimate':>10}  95% Wilson interval",
    ]
    by_value = {row["eigenvalue"]: row for row in doc["empirical"]}
    for entry in doc["analytic"]:
        row = by_value[entry["eigenvalue"]]
        lines.append(
            f"{entry['eigenvalue']:>10.6g}  {entry['probability']:>10.6g}  "
            f"{row['count']:>8d}  {row['estimate']:>10.6g}  "
            f"[{row['ci_low']:.6g}, {row['ci_high']:.6g}]"
        )
    chi = doc["chi_square"]
    lines.append("")
    if "post_selection" in doc:
        ps = doc["post_selection"]
        lines.append(
            f"post-selection: target {ps['target']:g}, kept {ps['selected']} "
            f"({ps['fraction']:.6g} of trials)"
        )
    if "relation" in doc:
        rel = doc["relation"]
        lines.append(
            f"relation held in {rel['held']} trials ({rel['fraction']:.6g})"
        )
    lines.append(
        f"chi-square: stat {chi['stat']:.6g}, dof {chi['dof']}, p {chi['p']:.6g}"
    )
    if "note" in doc:
        lines.append(f"note: {doc['note']}")
    lines.append(f"verdict: {doc['verdict']}")
    return "\n".join(lines) + "\n"


def _params_text(params: dict) -> str:
    if not params:
        return ""
    return "(" + ", ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in params.items()) + ")"


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def cmd_decomposition(
    theta_ab_deg: float,
    theta_bc_deg: float,
    mode: str,
    fmt: str = "table",
    output_path: str | None = None,
) -> int:
    """Decompose the undisturbed probability of the intermediate "up"
    outcome over the final outcomes of the three-axis spin chain.

    ``corrected`` uses final-outcome weights that account for the performed
    intermediate measurement; the two sides then agree to within 1e-10 and
    the command exits 0.  ``ss-erroneous`` takes the weights from the
    undisturbed evolution instead, numerically reproducing the bookkeeping
    error behind a well-known bogus inconsistency claim; the command exits 0
    when the expected mismatch appears.
    """
    if mode not in ("corrected", "ss-erroneous"):
        raise ValidationError(f"unknown decomposition mode {mode!r}")
    theta_ab = math.radians(theta_ab_deg)
    theta_bc = math.radians(theta_bc_deg)
    scenario = sc.sharp_shanks(theta_ab, theta_bc)
    up_index = scenario.intermediate.eigenvalues.index(1.0)
    lhs, rhs = decomposition_check(
        scenario.pre_state,
        scenario.intermediate,
        scenario.final,
        up_index,
        ignore_disturbance=(mode == "ss-erroneous"),
    )
    delta = abs(lhs - rhs)
    if mode == "corrected":
        passed = delta < IDENTITY_DELTA
    else:
        passed = delta > 1e-6  # the mismatch is the demonstration

    doc = {
        "mode": mode,
        "params": {"theta_ab_deg": theta_ab_deg, "theta_bc_deg": theta_bc_deg},
        "outcome": 1.0,
        "lhs": lhs,
        "rhs": rhs,
        "abs_delta": delta,
        "verdict": "pass" if passed else "fail",
    }
    if fmt == "json":
        text = render_json(doc) + "\n"
    elif fmt == "csv":
        text = (
            "mode,theta_ab_deg,theta_bc_deg,outcome,lhs,rhs,abs_delta,verdict\n"
            + ",".join(
                [
                    mode,
                    _num(theta_ab_deg),
                    _num(theta_bc_deg),
                    _num(1.0),
                    _num(lhs),
                    _num(rhs),
                    _num(delta),
                    doc["verdict"],
                ]
            )
            + "\n"
        )
    else:
        if mode == "corrected":
            comment = "weights include the intermediate measurement; sides must agree"
        else:
            comment = (
                "weights ignore the intermediate measurement; the mismatch "
                "exposes the erroneous bookkeeping"
            )
        text = (
            f"decomposition ({mode}) at theta_ab={theta_ab_deg:g} deg, "
            f"theta_bc={theta_bc_deg:g} deg\n"
            f"  lhs (weighted conditionals) : {lhs:.12g}\n"
            f"  rhs (undisturbed)           : {rhs:.12g}\n"
            f"  |lhs - rhs|                 : {delta:.12g}\n"
            f"  {comment}\n"
            f"verdict: {doc['verdict']}\n"
        )
    _emit(text, output_path)
    return EXIT_OK if passed else EXIT_STAT_FAIL


# ---------------------------------------------------------------------------
# weak
# ---------------------------------------------------------------------------

def cmd_weak(
    op_label: str,
    g_over_sigma: float,
    search: str = "A",
    grid_points: int = 2048,
    fmt: str = "table",
    output_path: str | None = None,
) -> int:
    """Weak-measurement pointer readout on the three-box two-state pair.

    Emits the pointer density as plot-ready CSV (``--format csv`` or
    ``--out``) and a summary comparing ``mean_shift / g`` with the real part
    of the weak value.
    """
    if g_over_sigma <= 0.0:
        raise ValidationError(f"g-over-sigma must be > 0, got {g_over_sigma}")
    scenario = sc.three_box(search)
    if op_label == "identity":
        op = identity_operator(3)
    else:
        boxes = sc.three_box_projectors()
        key = op_label.upper().removeprefix("P").removeprefix("_")
        if key not in boxes:
            raise ValidationError(
                f"unknown operator {op_label!r}; choose PA, PB, PC or identity"
            )
        op = boxes[key]

    sigma = 1.0
    g = g_over_sigma * sigma
    pointer = weak_measure_ensemble(scenario, op, g, sigma, grid_points)
    value = weak_value(scenario.two_state, op)
    ratio = pointer.mean_shift / g
    doc = {
        "scenario": "three-box",
        "params": {
            "search": search,
            "op": op_label,
            "g_over_sigma": g_over_sigma,
            "grid_points": grid_points,
        },
        "weak_value": {"re": value.real, "im": value.imag},
        "mean_shift": pointer.mean_shift,
        "mean_shift_over_g": ratio,
        "abs_error": abs(ratio - value.real),
    }
    csv_text = pointer_to_csv(pointer)
    if fmt == "csv":
        _emit(csv_text, output_path)
        return EXIT_OK
    if fmt == "json":
        text = render_json(doc) + "\n"
    else:
        text = (
            f"weak measurement of {op_label} on three-box (search {search})\n"
            f"  weak value          : {value.real:.12g}"
            + (f" {value.imag:+.12g}i\n" if abs(value.imag) > 1e-12 else "\n")
            + f"  g / sigma           : {g_over_sigma:.12g}\n"
            f"  mean shift / g      : {ratio:.12g}\n"
            f"  |shift/g - Re(A_w)| : {abs(ratio - value.real):.12g}\n"
        )
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# abl
# ---------------------------------------------------------------------------

def cmd_abl(
    psi1_path: str,
    psi2_path: str,
    observable_path: str,
    fmt: str = "table",
    output_path: str | None = None,
) -> int:
    """Conditional distribution and weak values for file-specified states.

    Prints the conditional (ABL) distribution, the same distribution with
    forward and backward states swapped (identical: time symmetry), the
    element of reality if one exists, and the weak value of each projector.
    """
    psi1 = load_state(psi1_path)
    psi2 = load_state(psi2_path)
    obs = load_observable(observable_path, label="observable")
    if psi1.dim != psi2.dim or psi1.dim != obs.dim:
        raise DimensionMismatchError(
            f"dims disagree: psi1 {psi1.dim}, psi2 {psi2.dim}, observable {obs.dim}"
        )
    tsv = TwoStateVector(forward=psi1, backward=psi2)
    dist = abl_distribution(tsv, obs)
    swapped = abl_distribution(tsv.swapped(), obs)
    certain = elements_of_reality(tsv, obs)
    try:
        weak_rows = [
            {"eigenvalue": v, "re": w.real, "im": w.imag}
            for v, w in projector_weak_values(tsv, obs)
        ]
    except WeakValueUndefinedError:
        weak_rows = None

    doc = {
        "abl": _distribution_rows(dist),
        "swapped": _distribution_rows(swapped),
        "element_of_reality": certain,
        "weak_values": weak_rows,
    }
    if fmt == "json":
        text = render_json(doc) + "\n"
    elif fmt == "csv":
        lines = ["eigenvalue,probability,swapped_probability,weak_re,weak_im"]
        for i, (v, p) in enumerate(dist.entries):
            wr = weak_rows[i] if weak_rows else {"re": math.nan, "im": math.nan}
            lines.append(
                ",".join(
                    _num(x)
                    for x in (v, p, swapped.entries[i][1], wr["re"], wr["im"])
                )
            )
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{'eigenvalue':>10}  {'conditional':>12}  {'swapped':>12}  weak value"]
        for i, (v, p) in enumerate(dist.entries):
            if weak_rows:
                wr = weak_rows[i]
                wtext = f"{wr['re']:.6g}{wr['im']:+.6g}i"
            else:
                wtext = "undefined"
            lines.append(
                f"{v:>10.6g}  {p:>12.6g}  {swapped.entries[i][1]:>12.6g}  {wtext}"
            )
        lines.append(
            "element of reality: "
            + (f"{certain:g}" if certain is not None else "none")
        )
        text = "\n".join(lines) + "\n"
    _emit(text, output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# list-scenarios
# ---------------------------------------------------------------------------

def cmd_list(fmt: str = "table") -> int:
    if fmt == "json":
        doc = [
            {"name": name, "help": help_text}
            for name, help_text in SCENARIO_HELP.items()
        ]
        sys.stdout.write(render_json(doc) + "\n")
    else:
        for name, help_text in SCENARIO_HELP.items():
            sys.stdout.write(f"{name:<22} {help_text}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, trials: bool = True) -> None:
    if trials:
        parser.add_argument("--trials", type=int, default=100000, metavar="N")
        parser.add_argument("--seed", type=int, default=42, metavar="S")
        parser.add_argument("--workers", type=int, default=1, metavar="W")
    parser.add_argument(
        "--format", choices=("json", "csv", "table"), default="table"
    )
    parser.add_argument("--out", metavar="PATH", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsvf",
        description="Pre-/post-selected quantum measurement calculators and simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and verify its statistics")
    p_run.add_argument("scenario", choices=sorted(SCENARIO_HELP))
    p_run.add_argument("--theta-ab", type=float, default=60.0, metavar="DEG")
    p_run.add_argument("--theta-bc", type=float, default=60.0, metavar="DEG")
    p_run.add_argument("--theta", type=float, default=60.0, metavar="DEG")
    p_run.add_argument(
        "--no-intermediate",
        dest="with_intermediate",
        action="store_false",
        help="skip the intermediate measurement (spin-counterexample)",
    )
    p_run.add_argument("--search", choices=("A", "B"), default="A")
    p_run.add_argument(
        "--variant",
        default=None,
        help="singlet or single-particle-y variant",
    )
    p_run.add_argument("--dump-trials", metavar="PATH", default=None)
    _add_common(p_run)

    p_dec = sub.add_parser(
        "decomposition", help="final-outcome decomposition identity / error demo"
    )
    p_dec.add_argument("--theta-ab", type=float, default=60.0, metavar="DEG")
    p_dec.add_argument("--theta-bc", type=float, default=60.0, metavar="DEG")
    p_dec.add_argument(
        "--mode", choices=("corrected", "ss-erroneous"), default="corrected"
    )
    _add_common(p_dec, trials=False)

    p_weak = sub.add_parser("weak", help="weak-measurement pointer readout")
    p_weak.add_argument("scenario", choices=("three-box",))
    p_weak.add_argument("--search", choices=("A", "B"), default="A")
    p_weak.add_argument(
        "--op", choices=("PA", "PB", "PC", "identity"), default="PC"
    )
    p_weak.add_argument("--g-over-sigma", type=float, default=0.05, metavar="R")
    p_weak.add_argument("--grid-points", type=int, default=2048, metavar="N")
    _add_common(p_weak, trials=False)

    p_abl = sub.add_parser(
        "abl", help="conditional distribution for states/observable from files"
    )
    p_abl.add_argument("psi1", metavar="PSI1.json")
    p_abl.add_argument("psi2", metavar="PSI2.json")
    p_abl.add_argument("observable", metavar="OBSERVABLE.json")
    _add_common(p_abl, trials=False)

    p_list = sub.add_parser("list-scenarios", help="list registered scenarios")
    p_list.add_argument(
        "--format", choices=("json", "csv", "table"), default="table"
    )

    return parser


def _run_params_from_args(args) -> dict:
    name = args.scenario
    if name == "sharp-shanks":
        return {"theta_ab_deg": args.theta_ab, "theta_bc_deg": args.theta_bc}
    if name == "spin-counterexample":
        return {"theta_deg": args.theta, "with_intermediate": args.with_intermediate}
    if name == "three-box":
        return {"search": args.search}
    if name == "singlet":
        return {"variant": args.variant or "components-x"}
    if name == "single-particle-y":
        return {"variant": args.variant or "xx"}
    return {}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    try:
        if args.command == "run":
            config = RunConfig(
                scenario=args.scenario,
                params=_run_params_from_args(args),
                trials=args.trials,
                seed=args.seed,
                output_path=args.out,
                fmt=args.format,
                workers=args.workers,
                dump_trials=args.dump_trials,
            )
            return cmd_run(config)
        if args.command == "decomposition":
            return cmd_decomposition(
                args.theta_ab, args.theta_bc, args.mode, args.format, args.out
            )
        if args.command == "weak":
            return cmd_weak(
                args.op,
                args.g_over_sigma,
                args.search,
                args.grid_points,
                args.format,
                args.out,
            )
        if args.command == "abl":
            return cmd_abl(args.psi1, args.psi2, args.observable, args.format, args.out)
        if args.command == "list-scenarios":
            return cmd_list(args.format)
        parser.error(f"unknown command {args.command!r}")
    except (DimensionMismatchError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PostSelectionImpossibleError, WeakValueUndefinedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except TsvfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
