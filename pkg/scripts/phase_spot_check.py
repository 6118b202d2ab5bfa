"""Test whether non-negative amplitudes give the least entangled preimage.

Part 1: GHZ/W/W~ superpositions at random simplex points, scanning two relative phases.
Part 2: two-component symmetric superpositions S(n,k1), S(n,k2), scanning one phase.
A positive gap means some phase beat the non-negative superposition.
"""
import argparse
import math

import numpy as np

from gme import convexify, ghz_w_family as gw, hartree, states


def symmetric_gap(n, k1, k2, q, phases, opts):
    a, b = states.symmetric_state(n, k1).amplitudes, states.symmetric_state(n, k2).amplitudes
    base = float(np.squeeze(convexify.symmetric_pure_entanglement(n, (k1, k2), (q, 1 - q))))
    best = math.inf
    for phi in np.linspace(0, 2 * math.pi, phases, endpoint=False):
        v = math.sqrt(q) * a + math.sqrt(1 - q) * np.exp(1j * phi) * b
        best = min(best, hartree.entanglement_eigenvalue(states.make_pure((2,) * n, v), opts).e_sin2)
    return base - best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--phases", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    pts = [tuple(p[:2]) for p in rng.dirichlet(np.ones(3), args.points)]
    gaps = gw.phase_spot_check(pts, phases=args.phases)
    print("x,y,gap")
    for (x, y), g in zip(pts, gaps):
        print(f"{x:.4f},{y:.4f},{g:.2e}")
    print(f"GHZ/W/W~: max gap {gaps.max():.2e} over {len(pts)} points")
    opts = hartree.SolverOptions(restarts=4, tol=1e-13)
    worst = -math.inf
    for n, k1, k2 in ((7, 2, 5), (4, 1, 3), (5, 1, 4), (6, 0, 3)):
        for q in rng.random(5):
            worst = max(worst, symmetric_gap(n, k1, k2, q, args.phases, opts))
    print(f"symmetric pairs: max gap {worst:.2e}")


if __name__ == "__main__":
    main()
