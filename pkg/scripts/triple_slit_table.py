#!/usr/bin/env python3
"""Print the full multi-slit probability table and interference orders for
each theory side by side."""

import argparse

from densitycube.experiments import all_masks, interference_orders, interference_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=3, choices=(2, 3, 4))
    parser.add_argument("--detector", type=int, default=1)
    args = parser.parse_args()

    theories = ["classical", "quantum"] + (["cube"] if args.k in (3, 4) else [])
    tables = {t: interference_table(t, args.k) for t in theories}

    header = "config  " + "".join(f"{t:>12}" for t in theories)
    print(header)
    print("-" * len(header))
    for mask in all_masks(args.k):
        row = "".join(f"{tables[t][mask][args.detector - 1]:12.6f}" for t in theories)
        print(f"{mask:<8}{row}")
    print("-" * len(header))
    for t in theories:
        orders = interference_orders(tables[t], args.k)
        name = orders["full_order"]["name"]
        value = orders["full_order"]["per_detector"][args.detector - 1]
        print(f"{t:<10} {name} at detector {args.detector}: {value:+.6f}")


if __name__ == "__main__":
    main()
