"""A fixed past is not a fixed future: conditional vs. undisturbed spin statistics.

Prepare a spin up along z, and also *find* it up along z at a later time.
What would an intermediate measurement along an axis tilted by 60 degrees
have shown?

Two candidate answers:

* the undisturbed (preparation-only) value cos^2(30 deg) = 0.75 -- correct
  if only the past is held fixed, because any particle prepared up along z
  passes the final up-along-z test whether or not hidden machinery exists;
* the conditional value cos^4 / (cos^4 + sin^4) = 0.9 -- correct for the
  sub-ensemble in which the intermediate measurement actually ran and the
  final test still succeeded.

The simulation shows both: without the intermediate measurement the final
selection always succeeds (the two ensembles are identical and 0.75 is the
plain Born frequency); with it, the post-selected frequency moves to 0.9.
"""

import math

from tsvf import abl_distribution, born_distribution, postselect, run_ensemble
from tsvf.scenarios import spin_counterexample
from tsvf.stats import frequencies

THETA_DEG = 60.0
TRIALS = 100_000
SEED = 42


def main() -> None:
    theta = math.radians(THETA_DEG)

    with_mid = spin_counterexample(theta, with_intermediate=True)
    undisturbed = born_distribution(with_mid.pre_state, with_mid.intermediate)
    conditional = abl_distribution(with_mid.two_state, with_mid.intermediate)

    print(f"tilt angle: {THETA_DEG:g} degrees, {TRIALS} trials, seed {SEED}\n")
    print(f"undisturbed prediction for 'up'  : {undisturbed.probability_of(1.0):.6f}")
    print(f"conditional prediction for 'up'  : {conditional.probability_of(1.0):.6f}\n")

    print("-- no intermediate measurement --")
    rec = run_ensemble(spin_counterexample(theta, with_intermediate=False), TRIALS, SEED)
    selected = postselect(rec, 1.0)
    print(f"post-selection kept {selected.size}/{rec.size} trials "
          "(the pre-selected-only and pre/post-selected ensembles coincide)")

    print("\n-- intermediate measurement performed --")
    rec = run_ensemble(with_mid, TRIALS, SEED)
    selected = postselect(rec, 1.0)
    report = frequencies(selected, "t")
    estimate = report.point_estimates[1.0]
    low, high = report.intervals[1.0]
    print(f"post-selection kept {selected.size}/{rec.size} trials")
    print(f"'up' frequency in the kept trials: {estimate:.5f}  "
          f"(95% interval [{low:.5f}, {high:.5f}])")
    print(f"  contains the conditional 0.9 : {low <= 0.9 <= high}")
    print(f"  contains the undisturbed 0.75: {low <= 0.75 <= high}")


if __name__ == "__main__":
    main()
