"""covgrid: camera-footprint grid decomposition and coverage path planning.

Decomposes a polygonal search area into grid cells sized to a UAV camera
footprint (adaptive channel sweep or uniform baseline) and computes
minimum-coverage-time visit orders over the cell centers, exactly or
heuristically.
"""

from .decomposition import (
    Cell,
    ChannelTrace,
    Decomposition,
    NonPositiveRadius,
    UnsupportedPolygon,
    agd_decompose,
    cell_edge,
    prune_outside_cells,
    sgd_decompose,
    sgd_lower_bound,
)
from .geometry import (
    AffineTransform,
    DegeneratePolygon,
    Point,
    PointLocation,
    Polygon,
    convex_hull,
    horizontal_intersections,
    longest_edge,
    normalize,
    point_in_polygon,
    polygon_area,
    validate_and_orient,
    vertices_in_band,
)
from .io_formats import (
    ParseError,
    ScenarioFile,
    ValidationError,
    parse_decomposition,
    parse_plan,
    parse_scenario,
    render_svg,
    write_decomposition,
    write_plan,
)
from .planner import (
    ArcSolution,
    ComparisonRow,
    DistanceMatrix,
    Infeasible,
    InvalidPermutation,
    NonPositiveSpeed,
    PathPlan,
    SizeLimitExceeded,
    brute_force_path,
    compare_methods,
    coverage_time,
    distance_matrix,
    heuristic_path,
    solve_paper_mode,
    solve_valid_path,
    verify_arc_solution,
)

__version__ = "0.1.0"
