#!/usr/bin/env python3
"""Sampled tomography error versus shot count: the reconstruction error of
the triple element should fall like 1/sqrt(shots)."""

import argparse
import math

import numpy as np

from densitycube.experiments import tomography_estimate
from densitycube.states import resolve_state


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--state", default="rho_n(psi=(1,1,1),n=2)")
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    state = resolve_state(args.state)
    true_z = complex(state.triple[0])
    print(f"state {args.state}: true z = {true_z:.6f}")
    print(f"{'shots':>10} {'mean |z_hat - z|':>18} {'sqrt(shots) * err':>18}")
    for shots in (100, 1_000, 10_000, 100_000):
        errors = [
            abs(tomography_estimate(state, shots, seed=args.seed + i)["z_hat"] - true_z)
            for i in range(args.seeds)
        ]
        mean = float(np.mean(errors))
        print(f"{shots:>10} {mean:>18.3e} {mean * math.sqrt(shots):>18.3f}")


if __name__ == "__main__":
    main()
