"""Knot type of the inverted 7-stick figure-eight at a few centers."""

import argparse
import time
from dataclasses import dataclass

from polyinv.geom import InversionSpec
from polyinv.knots import classify
from polyinv.polygon import arc_deviation, circle_arc_image, figure_eight_7, polygonal_inversion, relative_gap


@dataclass
class Config:
    centers: tuple = ((0, 0, 0), (-6, -6, -6), (100, 100, 100), (1000, 1000, 1000))
    seed: int = 0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(seed=parser.parse_args().seed)

    K = figure_eight_7()
    print(f"{'center':>20}  {'type':<13} {'det':>3}  {'jones (t)':<34} {'gap':>7}  arc dev")
    start = time.perf_counter()
    for c in cfg.centers:
        spec = InversionSpec(c)
        image = polygonal_inversion(K, spec)
        k = classify(image, rng=cfg.seed)
        dev = arc_deviation(circle_arc_image(K, spec))
        print(f"{str(c):>20}  {k.label:<13} {k.determinant:>3}  {k.jones_t().format('t'):<34} {relative_gap(image):7.4f}  {dev:.3g}")
    print(f"original: {classify(K, rng=cfg.seed).label}  ({time.perf_counter() - start:.2f} s)")


if __name__ == "__main__":
    main()
