"""Polygonal inversion of knots, sphere arrangements and knot-type bounds."""

from .arrangement import (
    SphereSystem,
    build_intersection_poset,
    circles_on_sphere_bound,
    euler_characteristic_generic,
    planarity_normalize,
    region_count_exact,
    region_count_upper,
    sphere_system,
    voxel_region_count,
    voxel_region_count_stable,
)
from .geom import (
    DEFAULT_EPS,
    Circle3,
    InversionSpec,
    MobiusMap,
    Plane,
    Sphere,
    apply_mobius,
    intersect_circle_sphere,
    intersect_spheres,
    invert_point,
    shape_of_quadruple,
)
from .homology import homology_ranks
from .knots import classify, determinant, jones, kauffman_bracket, project_to_diagram
from .polygon import (
    Polygon,
    circle_arc_image,
    figure_eight_7,
    find_singularity,
    polygonal_inversion,
    read_polygon,
    write_polygon,
)
from .survey import bound_knots, check_mobius_theorem, crossover, lower_bound_knot_types, survey_centers

__version__ = "0.1.0"

__all__ = [
    "SphereSystem",
    "build_intersection_poset",
    "circles_on_sphere_bound",
    "euler_characteristic_generic",
    "planarity_normalize",
    "region_count_exact",
    "region_count_upper",
    "sphere_system",
    "voxel_region_count",
    "voxel_region_count_stable",
    "DEFAULT_EPS",
    "Circle3",
    "InversionSpec",
    "MobiusMap",
    "Plane",
    "Sphere",
    "apply_mobius",
    "intersect_circle_sphere",
    "intersect_spheres",
    "invert_point",
    "shape_of_quadruple",
    "Polygon",
    "circle_arc_image",
    "figure_eight_7",
    "find_singularity",
    "polygonal_inversion",
    "read_polygon",
    "write_polygon",
    "homology_ranks",
    "classify",
    "determinant",
    "jones",
    "kauffman_bracket",
    "project_to_diagram",
    "bound_knots",
    "check_mobius_theorem",
    "crossover",
    "lower_bound_knot_types",
    "survey_centers",
]
