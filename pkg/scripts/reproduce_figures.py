"""Write every figure table to a directory (default: figures/)."""
import argparse
import time

from gme import cli, figures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--grid", type=int, default=201)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for fid in figures.FIGURES:
        t0 = time.perf_counter()
        code = cli.main(["figure", str(fid), "--grid", str(args.grid), "--seed", str(args.seed), "--out", args.out])
        if code:
            raise SystemExit(code)
        print(f"  figure {fid} done in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
