"""Degree-regular geodesic triangulations of the sphere, the Euclidean plane and the hyperbolic plane."""

from regtri.analysis import (
    LayerStats,
    SlopeFit,
    area_conservation,
    edge_length_stats,
    edge_lengths,
    loglog_slope,
    max_length_series,
    min_angle_series,
)
from regtri.euclidean import (
    EuclideanParams,
    euclidean_layer_summaries,
    generate_euclidean,
    hexagonal_patch,
    interlayer_assignment,
    layer_count,
    layer_count_closed_form,
)
from regtri.hyperbolic import (
    HyperbolicParams,
    RadiusSchedule,
    ScheduleError,
    generate_hyperbolic,
    inequality_margin,
    layer_radius,
    sector_vertices,
    validate_schedule,
)
from regtri.io import load, render_svg, save
from regtri.kernel import (
    HPoint,
    HSegment,
    hyp_distance,
    klein_to_poincare,
    poincare_to_klein,
    right_hypotenuse,
    segment_intersect,
    triangle_angles,
    triangle_area,
)
from regtri.mesh import Edge, EdgeType, Geometry, Mesh, MeshError, Vertex, build_mesh
from regtri.planar import SegmentRelation
from regtri.sphere import generate_sphere, spherical_edge_length
from regtri.validate import (
    ValidationReport,
    check_regular,
    closed_surface_identity,
    disk_identity,
    euler_report,
    feasibility,
    noncrossing_check,
)

__version__ = "0.1.0"
