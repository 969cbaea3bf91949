"""Command-line interface.

Exit status: 0 success, 1 usage error, 2 unreadable input, 3 degenerate
geometry or another computation failure (the error class name is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import arrangement, knots, polygon, survey
from .errors import ParseError, PolyInvError
from .geom import DEFAULT_EPS, InversionSpec

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CliConfig:
    command: str
    eps: float = DEFAULT_EPS
    seed: int = 0
    json: bool = False
    samples_per_arc: int = 64
    voxel_cap: int = 512

    def __post_init__(self):
        if not self.eps > 0:
            raise UsageError("--eps must be positive")


def _point(text: str) -> np.ndarray:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}") from None
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return np.array(values)


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--eps", type=_positive, default=DEFAULT_EPS, help="degeneracy tolerance")

    parser = _Parser(prog="polyinv", description="Polygonal inversion of knots through spheres.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invert", parents=[common], help="polygonal inversion of a polygon file")
    p.add_argument("--polygon", required=True)
    p.add_argument("--center", type=_point, required=True)
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--output", "-o")

    p = sub.add_parser("arcs", parents=[common], help="sampled circle-arc image")
    p.add_argument("--polygon", required=True)
    p.add_argument("--center", type=_point, required=True)
    p.add_argument("--samples-per-arc", type=int, default=64)
    p.add_argument("--output", "-o")

    p = sub.add_parser("spheres", parents=[common], help="sphere system of a polygon")
    p.add_argument("--polygon", required=True)
    p.add_argument("--output", "-o")

    p = sub.add_parser("regions", parents=[common], help="count complementary domains of a sphere system")
    p.add_argument("--system", required=True)
    p.add_argument("--voxel", action="store_true", help="also run the voxel cross-check")
    p.add_argument("--voxel-cap", type=int, default=arrangement.VOXEL_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", parents=[common], help="knot type of a polygon (optionally after inversion)")
    p.add_argument("--polygon", required=True)
    p.add_argument("--center", type=_point)
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("survey", parents=[common], help="knot types over many inversion centers")
    p.add_argument("--polygon", required=True)
    p.add_argument("--centers", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--near-sphere-offset", type=_positive, default=1e-2)
    p.add_argument("--samples-per-sphere", type=int, default=8)
    p.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")

    p = sub.add_parser("bounds", parents=[common], help="bounds on knot types for n-edge polygons")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("crossover", parents=[common], help="edge counts where no polygon is universal")
    p.add_argument("--json", action="store_true")
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_polygon(path: str) -> polygon.Polygon:
    try:
        return polygon.read_polygon(path)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None


def cmd_invert(args) -> None:
    K = _load_polygon(args.polygon)
    image = polygon.polygonal_inversion(K, InversionSpec(args.center, args.radius), args.eps)
    _emit(polygon.format_polygon(image), args.output)


def cmd_arcs(args) -> None:
    K = _load_polygon(args.polygon)
    arcs = polygon.circle_arc_image(K, InversionSpec(args.center), args.eps)
    blocks = []
    for k, line in enumerate(arcs.polylines(args.samples_per_arc)):
        rows = "".join(" ".join(f"{c:.17g}" for c in v) + "\n" for v in line)
        blocks.append(f"# arc {k}\n{rows}")
    _emit("\n".join(blocks), args.output)


def cmd_spheres(args) -> None:
    K = _load_polygon(args.polygon)
    system = arrangement.sphere_system(K, args.eps)
    text = arrangement.format_sphere_system(system) if system.surfaces else ""
    notes = [f"# {len(system)} surfaces from {K.n * (K.n - 3) // 2} edge pairs"]
    for k, prov in enumerate(system.provenance):
        notes.append(f"# surface {k}: edge pairs " + " ".join(f"{i}-{j}" for i, j in prov))
    for (i, j), shape in system.skipped:
        notes.append(f"# skipped edge pair {i}-{j}: {type(shape).__name__.lower()}")
    _emit("\n".join(notes) + "\n" + text, args.output)


def cmd_regions(args) -> None:
    system = _load_system(args.system)
    exact = arrangement.region_count_exact(system, args.eps, seed=args.seed)
    record = {
        "schema": SCHEMA,
        "surfaces": len(system),
        "region_count_exact": exact,
        "region_count_upper": arrangement.region_count_upper(len(system)),
        "voxel_count": None,
        "voxel_resolution": None,
    }
    if args.voxel:
        normal = arrangement.planarity_normalize(system, seed=args.seed, eps=args.eps)
        count, res = arrangement.voxel_region_count_stable(normal, cap=args.voxel_cap)
        record["voxel_count"], record["voxel_resolution"] = count, res
    if args.json:
        print(json.dumps(record))
    else:
        for key, value in record.items():
            if key != "schema" and value is not None:
                print(f"{key}={value}")


def _load_system(path: str) -> arrangement.SphereSystem:
    try:
        return arrangement.read_sphere_system(path)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None


def cmd_classify(args) -> None:
    K = _load_polygon(args.polygon)
    if args.center is not None:
        K = polygon.polygonal_inversion(K, InversionSpec(args.center, args.radius), args.eps)
    result = knots.classify(K, rng=args.seed, eps=args.eps)
    if args.json:
        record = {"schema": SCHEMA, "seed": args.seed, **result.as_record()}
        print(json.dumps(record))
    else:
        print(result.label)
        print(f"jones: {result.jones_t().format('t')}")
        print(f"determinant: {result.determinant}")
        print(f"writhe: {result.writhe}")
        print(f"crossings: {result.crossings}")


def cmd_survey(args) -> None:
    K = _load_polygon(args.polygon)
    strategy = survey.SurveyStrategy(
        random_centers=args.centers,
        samples_per_sphere=args.samples_per_sphere,
        near_sphere_offset=args.near_sphere_offset,
    )
    report = survey.survey_centers(K, strategy, seed=args.seed, eps=args.eps)
    if args.json:
        _emit(json.dumps(report.as_record(), indent=1) + "\n", None if args.json == "-" else args.json)
        if args.json == "-":
            return
    print(f"spheres={report.spheres} region_count_exact={report.region_count} bound_knots={report.bound}")
    print(f"centers evaluated={report.evaluated} discarded={report.discarded} failures={report.failures}")
    for e in sorted(report.entries, key=lambda e: (-e.count, e.label)):
        flag = "" if e.reliable else " (unreliable)"
        center = ",".join(f"{c:.6g}" for c in e.center)
        print(f"{e.label}{flag}: {e.count} centers, e.g. {center}")


def cmd_bounds(args) -> None:
    if args.n < 4:
        raise UsageError("bounds: n must be at least 4")
    table = survey.bounds_table(args.n)
    if args.json:
        print(json.dumps({"schema": SCHEMA, **asdict(table)}))
    else:
        for key, value in asdict(table).items():
            print(f"{key}={value}")


def cmd_crossover(args) -> None:
    single, mobius = survey.crossover(False), survey.crossover(True)
    rows = []
    for label, n, factor in (("single", single, 1), ("mobius", mobius, 2)):
        for m in (n - 1, n):
            rows.append(
                {
                    "group": label,
                    "n": m,
                    "knots_lower": survey.lower_bound_knot_types(m),
                    "knots_upper": factor * survey.bound_knots(m),
                }
            )
    if args.json:
        print(json.dumps({"schema": SCHEMA, "single_inversion": single, "mobius_group": mobius, "rows": rows}))
        return
    print(f"single-inversion: {single}, mobius-group: {mobius}")
    for r in rows:
        rel = ">" if r["knots_lower"] > r["knots_upper"] else "<="
        print(f"{r['group']} n={r['n']}: lower {r['knots_lower']} {rel} upper {r['knots_upper']}")


COMMANDS = {
    "invert": cmd_invert,
    "arcs": cmd_arcs,
    "spheres": cmd_spheres,
    "regions": cmd_regions,
    "classify": cmd_classify,
    "survey": cmd_survey,
    "bounds": cmd_bounds,
    "crossover": cmd_crossover,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        CliConfig(args.command, eps=args.eps)
        COMMANDS[args.command](args)
    except UsageError as err:
        print(err, file=sys.stderr)
        return 1
    except ParseError as err:
        print(f"ParseError: {err}", file=sys.stderr)
        return 2
    except PolyInvError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
