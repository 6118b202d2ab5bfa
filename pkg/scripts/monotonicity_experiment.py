"""Check that local operations never raise the average Lambda^2 on random 3-qubit states.

Prints the smallest margin sum_k p_k Lambda_k^2 - Lambda^2 seen over the trials.
"""
import argparse

import numpy as np

from gme import hartree, states


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--outcomes", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    opts = hartree.SolverOptions()
    margins = []
    for _ in range(args.trials):
        psi = states.random_pure((2, 2, 2), rng)
        lam = hartree.entanglement_eigenvalue(psi, opts).lambda_max
        kraus = hartree.random_kraus(2, args.outcomes, rng)
        ens = hartree.apply_unilocal_channel(psi, kraus, int(rng.integers(3)))
        margins.append(hartree.average_lambda_sq(ens, opts) - lam**2)
    m = np.array(margins)
    print(f"trials={len(m)} min={m.min():.3e} median={np.median(m):.3e} violations={(m < -1e-8).sum()}")


if __name__ == "__main__":
    main()
