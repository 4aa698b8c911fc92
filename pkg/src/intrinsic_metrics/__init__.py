"""Boundary-aware intrinsic metrics on Euclidean domains.

Distances that compare the separation of two points against their distance
to the domain boundary, together with the tools the package is really about:
an inequality catalog with sharpness scans, Lipschitz analysis of conformal
maps, a Monte Carlo conjecture harness and metric-ball geometry on grids.

The numeric core is compiled when the extension module is available and
falls back to the interpreted twin otherwise; both produce bitwise-identical
results.  ``kernel_backend`` reports which one is active.
"""

from intrinsic_metrics._kernels import BACKEND as kernel_backend
from intrinsic_metrics.domains import (
    BoundarySet,
    HalfSpace,
    OutsideDomainError,
    Polygon,
    PuncturedDisk,
    Sector,
    UnitBall,
    boundary_distance,
    contains,
    domain_from_json,
    domain_to_json,
    half_plane_with_strip,
    heron_infimum,
    load_domain,
    nearest_boundary_point,
    pentagram,
    preset,
    sample_points,
    save_domain,
)
from intrinsic_metrics.metrics import (
    AxiomReport,
    MetricKind,
    axiom_fuzz,
    chi_metric,
    generalized_t,
    hyperbolic,
    jstar_metric,
    metric_kind,
    metric_pairs,
    metric_value,
    phi_metric,
    pointpair_metric,
    psi_metric,
    sratio_metric,
    t_metric,
    th_half_rho,
    upsilon_metric,
)
from intrinsic_metrics.bounds import (
    BoundReport,
    InequalityEntry,
    catalog,
    check_pair,
    families_for,
    find_entry,
    fuzz_bounds,
    sharpness_families,
    sharpness_scan,
)
from intrinsic_metrics.mappings import (
    Cayley,
    MobiusDisk,
    PowerMap,
    RadialMap,
    RatioReport,
    SectorInversion,
    apply,
    apply_many,
    claimed_bound,
    conjecture_search,
    extremal_pairs,
    lipschitz_estimate,
    power_coefficient,
    power_map_bounds_check,
    radial_map_check,
    sector_inversion_s_invariance,
)
from intrinsic_metrics.balls import (
    BoundaryTouch,
    Contour,
    ScalarField,
    StarlikeReport,
    boundary_reach,
    contours_to_json,
    corner_points,
    extract_contours,
    field_to_csv,
    grid_field,
    render_svg,
    starlike_check,
    touches_boundary,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "__version__",
    # domains
    "HalfSpace", "UnitBall", "Sector", "Polygon", "BoundarySet",
    "PuncturedDisk", "OutsideDomainError", "contains", "boundary_distance",
    "heron_infimum", "nearest_boundary_point", "pentagram",
    "half_plane_with_strip", "preset", "domain_to_json", "domain_from_json",
    "save_domain", "load_domain", "sample_points",
    # metrics
    "MetricKind", "metric_kind", "metric_value", "metric_pairs", "t_metric",
    "jstar_metric", "pointpair_metric", "sratio_metric", "hyperbolic",
    "th_half_rho", "generalized_t", "phi_metric", "psi_metric",
    "upsilon_metric", "chi_metric", "axiom_fuzz", "AxiomReport",
    # bounds
    "InequalityEntry", "BoundReport", "catalog", "find_entry", "check_pair",
    "fuzz_bounds", "sharpness_scan", "sharpness_families", "families_for",
    # mappings
    "MobiusDisk", "Cayley", "PowerMap", "RadialMap", "SectorInversion",
    "apply", "apply_many", "claimed_bound", "extremal_pairs",
    "lipschitz_estimate", "power_coefficient",
    "power_map_bounds_check", "radial_map_check",
    "sector_inversion_s_invariance", "conjecture_search", "RatioReport",
    # balls
    "ScalarField", "Contour", "BoundaryTouch", "StarlikeReport", "grid_field",
    "extract_contours", "contours_to_json", "field_to_csv", "render_svg",
    "boundary_reach", "touches_boundary", "starlike_check", "corner_points",
]
