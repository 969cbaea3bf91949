"""Upper and lower bounds on knot types per edge count, and where they cross."""

import argparse

from polyinv.survey import bound_knots, bounds_table, crossover, lower_bound_knot_types


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ns", type=int, nargs="+", default=[4, 7, 10, 20, 40, 60, 70, 71, 72, 73, 74, 75, 76])
    args = parser.parse_args()

    print(f"{'n':>3} {'spheres':>7} {'upper':>14} {'upper x2':>14} {'lower':>14}")
    for n in args.ns:
        t = bounds_table(n)
        print(f"{n:>3} {t.spheres_max:>7} {t.knots_upper:>14} {t.knots_upper_mobius:>14} {t.knots_lower:>14}")
    single, mobius = crossover(), crossover(double_for_mobius=True)
    print(f"single-inversion: {single}, mobius-group: {mobius}")
    for n, f in ((single, 1), (mobius, 2)):
        for m in (n - 1, n):
            lo, up = lower_bound_knot_types(m), f * bound_knots(m)
            print(f"  n={m}: lower {lo} {'>' if lo > up else '<='} {f} x upper = {up}")


if __name__ == "__main__":
    main()
