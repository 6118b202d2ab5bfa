"""Compare closed-form Lambda for symmetric states with the unrestricted solver."""
import argparse

from gme import closed_forms, hartree, states


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=6)
    args = ap.parse_args()
    opts = hartree.SolverOptions()
    print("n,k,closed_form,solver,diff")
    for n in range(2, args.nmax + 1):
        for k in range(n + 1):
            exact = closed_forms.lambda_symmetric(n, k)
            lam = hartree.entanglement_eigenvalue(states.symmetric_state(n, k), opts).lambda_max
            print(f"{n},{k},{exact:.12f},{lam:.12f},{lam - exact:.2e}")


if __name__ == "__main__":
    main()
