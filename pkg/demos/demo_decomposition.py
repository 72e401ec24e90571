"""Where a famous "inconsistency proof" goes wrong.

Chain three spin measurements along coplanar axes a, b, c.  The undisturbed
probability of 'up' along b can be decomposed over the final outcomes:

    Prob(up_b) = sum_k Prob(f_k) * Prob(up_b | f_k)

with the conditionals given by the two-state (ABL) rule.  The identity holds
-- PROVIDED the weights Prob(f_k) are computed for the experiment in which
the intermediate measurement actually runs.  Plugging in the weights of the
undisturbed evolution instead mixes two incompatible experiments and breaks
the equation; that bookkeeping slip, not the conditional rule, is what the
alleged inconsistency proofs discovered.
"""

import math

import numpy as np

from tsvf import decomposition_check, spin_observable, spin_state


def sides(theta_ab_deg, theta_bc_deg, ignore_disturbance):
    theta_ab = math.radians(theta_ab_deg)
    theta_bc = math.radians(theta_bc_deg)
    intermediate = spin_observable(theta_ab)
    final = spin_observable(theta_ab + theta_bc)
    return decomposition_check(
        spin_state(0.0),
        intermediate,
        final,
        intermediate.eigenvalues.index(1.0),
        ignore_disturbance=ignore_disturbance,
    )


def main() -> None:
    print("decomposition at theta_ab = theta_bc = 60 degrees\n")
    lhs, rhs = sides(60.0, 60.0, ignore_disturbance=False)
    print(f"correct weights   : lhs = {lhs:.12f}   rhs = {rhs:.12f}")
    lhs_bad, _ = sides(60.0, 60.0, ignore_disturbance=True)
    print(f"undisturbed weights: lhs = {lhs_bad:.12f}   rhs = {rhs:.12f}   <- mismatch\n")

    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(500):
        a = rng.uniform(0.0, 360.0)
        b = rng.uniform(0.0, 360.0)
        lhs, rhs = sides(a, b, ignore_disturbance=False)
        worst = max(worst, abs(lhs - rhs))
    print(f"500 random angle pairs with correct weights: worst |lhs - rhs| = {worst:.3e}")
    print("the identity is exact; only the wrong weights ever break it")


if __name__ == "__main__":
    main()
