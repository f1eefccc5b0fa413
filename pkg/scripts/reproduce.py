"""Run both default systems end to end and compare them.

    python scripts/reproduce.py [--out results] [--times 65] [--grid 4001]

Writes ``<out>/dswp``, ``<out>/iswp`` and ``<out>/comparison.csv`` and prints
the spectrum, the fitted coefficients and the classification of each run.
"""
import argparse
import csv
import json
import sys
import time
from pathlib import Path

from tunnelinfo.cli import RunConfig, main as cli_main, run_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--times", type=int, default=65)
    ap.add_argument("--grid", type=int, default=4001)
    args = ap.parse_args()
    root = Path(args.out)

    for system in ("dswp", "iswp"):
        cfg = RunConfig(system=system, n_times=args.times, n_grid=args.grid,
                        output_dir=str(root / system), display_scaled=True)
        start = time.perf_counter()
        manifest = run_scenario(cfg)
        print(f"== {system}  ({time.perf_counter() - start:.1f} s)")
        print(json.dumps(manifest.summary, indent=2))
        with open(root / system / "eigen.csv", newline="") as fh:
            for row in csv.DictReader(fh):
                print(f"  {row['label']:>5}  E = {float(row['energy_eV']):+.7f} eV")
        with open(root / system / "fit.csv", newline="") as fh:
            for row in csv.DictReader(fh):
                alpha = ", ".join(f"{float(row[f'alpha{j}']):.5f}" for j in range(5))
                print(f"  {row['name']}: alpha = ({alpha}), rmse = {float(row['rmse_measure']):.3g}")

    print("== comparison")
    return cli_main(["compare", str(root / "dswp"), str(root / "iswp"), "--out", str(root), "-q"])


if __name__ == "__main__":
    sys.exit(main())
