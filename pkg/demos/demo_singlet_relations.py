"""Which certainties about a singlet pair can be tested on one system?

Four families of outcome relations, all certain for a freshly prepared
singlet, but with very different testability:

* component anticorrelations ({s_1x} + {s_2x} = 0): certain, but the x and
  y versions cannot be co-tested -- measuring components destroys the
  partner relation (the "incompatible" run shows the damage);
* sum observables ({s_1x + s_2x} = 0 then {s_1y + s_2y} = 0): both certain
  AND sequentially testable on a single pair, because the sum measurements
  preserve the singlet;
* split-time variants (one particle early, the other late): each certain
  on its own, never jointly;
* one free +y spin: a repeated x measurement agrees with itself, and an
  undisturbed y measurement gives +1.
"""

from tsvf import run_ensemble
from tsvf.scenarios import single_particle_y, singlet_relations

TRIALS = 20_000
SEED = 42


def show(scenario, trials=TRIALS, seed=SEED):
    rec = run_ensemble(scenario, trials, seed)
    held = sum(1 for t in rec.trials if scenario.relation.holds(t))
    expected = scenario.relation.expected_probability
    print(
        f"  {scenario.label:<28} {scenario.relation.description:<34} "
        f"{held:>6}/{trials}  (expected {expected:g})"
    )


def main() -> None:
    print("relation satisfaction over seeded ensembles\n")
    print("certain and co-testable in sequence:")
    show(singlet_relations("sums-sequential"))

    print("\ncertain, but the x and y versions exclude each other:")
    show(singlet_relations("components-x"))
    show(singlet_relations("incompatible"))

    print("\nsplit-time relations (each certain, never jointly):")
    for scenario in singlet_relations("two-time"):
        show(scenario)

    print("\nsingle +y particle:")
    show(single_particle_y("xx"))
    show(single_particle_y("y"))


if __name__ == "__main__":
    main()
