"""Hilbert metric toolkit for bounded convex planar domains."""

from .asymptotic import (
    ConvexityReport,
    DistanceProfile,
    GeodesicPair,
    LimitEstimate,
    PhiParams,
    closed_form_example,
    convexity_report,
    distance_profile,
    example1_profile,
    example2_profile,
    limit_estimate,
    phi_second,
    phi_value,
    synchronize,
    thm1a_case1_profile,
    vertex_lower_bound_check,
    wedge_pencil_distance,
)
from .counterexample import (
    C2Arc,
    CounterexampleParams,
    InterpolationData,
    build_counterexample_domain,
    c2_interpolant,
    d2_at_contact,
    d_profile_derivatives,
    feasibility_check,
    flat_segment_endpoint,
    verify_nonconvexity,
)
from .domain_io import domain_from_json, domain_to_json, load_domain, save_domain
from .domains import (
    BoundaryPoint,
    EllipseDomain,
    GraphCapDomain,
    PolygonDomain,
    SmoothDomain,
    TransformedDomain,
    chord,
    contains,
    cubic_cap_domain,
    curvature_at,
    transform_domain,
    validate,
)
from .metric import (
    EuclidGap,
    GeodesicLine,
    euclid_gap,
    geodesic_through,
    geodesic_toward,
    hilbert_distance,
)
from .projective import (
    CollinearQuad,
    HomLine,
    Point,
    ProjectiveMap,
    apply_map,
    cross_ratio,
    intersect,
    join,
    map_from_correspondence,
)

__version__ = "0.1.0"
