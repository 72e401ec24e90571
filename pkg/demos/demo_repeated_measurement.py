"""Unperformed measurements have no results: the 1/4 fallacy.

Measure the x component of a z-up spin twice in a row.  Each measurement,
taken alone, gives +1 with probability 1/2, so reasoning about the two as
independent hypotheticals suggests both come up +1 a quarter of the time.
But the first measurement collapses the spin onto an x eigenstate, the
second merely repeats it, and the joint (+1, +1) frequency is 1/2.  The
"1/4" belongs to no experiment anyone can run.
"""

from tsvf import run_ensemble
from tsvf.scenarios import double_sigma_x
from tsvf.stats import wilson_interval

TRIALS = 100_000
SEED = 42


def main() -> None:
    scenario = double_sigma_x()
    rec = run_ensemble(scenario, TRIALS, SEED)

    both_up = sum(
        1 for t in rec.trials if t.outcome_at("t") == 1.0 and t.outcome_at("t2") == 1.0
    )
    differing = sum(
        1 for t in rec.trials if t.outcome_at("t") != t.outcome_at("t2")
    )
    low, high = wilson_interval(both_up, TRIALS)

    print(f"{TRIALS} trials, seed {SEED}\n")
    print(f"first outcome +1            : {sum(1 for t in rec.trials if t.outcome_at('t') == 1.0)}")
    print(f"both outcomes +1            : {both_up}  "
          f"(frequency {both_up / TRIALS:.5f}, 95% interval [{low:.5f}, {high:.5f}])")
    print(f"outcomes differing          : {differing}")
    print()
    print(f"the interval contains 1/2   : {low <= 0.5 <= high}")
    print(f"the interval contains 1/4   : {low <= 0.25 <= high}")


if __name__ == "__main__":
    main()
