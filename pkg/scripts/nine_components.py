"""Four spheres whose complement has nine components, counted two ways."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from polyinv.arrangement import (
    SphereSystem,
    build_intersection_poset,
    complement_cohomology_rank,
    region_count_exact,
    voxel_region_count,
)
from polyinv.geom import Sphere
from polyinv.homology import homology_ranks


@dataclass
class Config:
    resolutions: tuple = (64, 128, 256, 512)


SPHERES = [
    Sphere(np.array([0.0, 0.0, 0.0]), 1.0),
    Sphere(np.array([1.0, 0.0, 0.0]), 1.0),
    Sphere(np.array([0.5, 0.8, 0.0]), 1.0),
    Sphere(np.array([0.5, 3.8, 0.0]), 2.0),  # tangent to the third, clear of the first two
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resolutions", type=int, nargs="+", default=list(Config.resolutions))
    cfg = Config(tuple(parser.parse_args().resolutions))

    system = SphereSystem.of(SPHERES)
    P = build_intersection_poset(system)
    spheres, circles, points = P.census()
    print(f"poset: {spheres} spheres, {circles} circles, {points} points, plus top = {len(P)} elements")
    for k, e in enumerate(P.elements):
        if e.dim != 0:
            b = homology_ranks(P.order_complex(k))
            print(f"  {e.kind:<6} #{k:<2} below={sorted(P.below[k])!s:<28} contributes {b[1 - e.dim]}")
    print(f"rank H^0 = {complement_cohomology_rank(P)}, components = {region_count_exact(system)}")
    for res in cfg.resolutions:
        start = time.perf_counter()
        count = voxel_region_count(system, res)
        print(f"voxel {res:>4}^3: {count}  ({time.perf_counter() - start:.1f} s)")


if __name__ == "__main__":
    main()
