"""Convergence of the finite-difference reference levels towards the
matching-function energies of the default double well.

    python scripts/convergence.py
"""
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import fd_levels  # noqa: E402

from tunnelinfo.eigensolver import solve_spectrum  # noqa: E402
from tunnelinfo.potentials import DEFAULT_CONSTANTS, DswpParams  # noqa: E402


def main():
    p = DswpParams()
    exact = np.array([s.energy for s in solve_spectrum(p)[:4]])
    print("matching function:", ", ".join(f"{e:+.8f}" for e in exact), "eV")
    print(f"{'N':>7}  {'max |dE| (eV)':>14}  ratio")
    prev = None
    for n in (2500, 5000, 10_000, 20_000, 40_000):
        err = np.max(np.abs(fd_levels(p, DEFAULT_CONSTANTS, n=n) - exact))
        ratio = f"{prev / err:.2f}" if prev else ""
        print(f"{n:>7}  {err:>14.3e}  {ratio}")
        prev = err


if __name__ == "__main__":
    main()
