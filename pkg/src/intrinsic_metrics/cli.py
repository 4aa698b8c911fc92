"""Command-line front end with reproducible, file-based outputs.

Every subcommand is deterministic given its flags and seed; randomized runs
echo the seed in their output so artifacts can be regenerated byte for byte.
Exit codes: 0 success, 1 I/O failure, 2 invalid input or points, 3 violated
bound or axiom.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import balls as _B
from . import bounds as _bounds
from . import domains as _D
from . import mappings as _maps
from . import metrics as _M

_EXIT_OK = 0
_EXIT_IO = 1
_EXIT_INPUT = 2
_EXIT_VIOLATION = 3


# ---------------------------------------------------------------------------
# flag parsing helpers


def _parse_point(text: str) -> tuple[float, ...]:
    try:
        coords = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse point {text!r}; expected decimals like 0,1") from None
    if len(coords) < 2:
        raise ValueError(f"point {text!r} needs at least two coordinates")
    return coords


def _load_domain(text: str) -> _D.DomainSpec:
    if os.path.exists(text) or text.endswith(".json"):
        return _D.load_domain(text)
    return _D.preset(text)


def _parse_levels(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"levels {text!r} must be a value or start:stop:step")
    start, stop, step = (float(p) for p in parts)
    if step <= 0.0:
        raise ValueError("levels step must be positive")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    # Snap accumulated sums back to short decimals (0.1 + 2*0.1 -> 0.3) so
    # level ids and artifacts carry the values the user actually typed.
    out = [float(format(start + i * step, ".12g")) for i in range(max(count, 0))]
    return [v for v in out if v <= stop + step * 1e-9]


def _parse_bbox(text: str) -> _D.Box:
    vals = tuple(float(p) for p in text.split(","))
    if len(vals) != 4:
        raise ValueError("bbox must be xmin,ymin,xmax,ymax")
    return vals


def _parse_resolution(text: str):
    if "," in text:
        nx, ny = (int(p) for p in text.split(","))
        return (nx, ny)
    return int(text)


def _grid_bbox(domain: _D.DomainSpec, bbox: _D.Box | None) -> _D.Box:
    """Explicit bbox, else the domain's own box, else the sampler's box."""
    if bbox is not None:
        return bbox
    box = _D.bounding_box(domain)
    if box is not None:
        return box
    try:
        return _D.sampling_box(domain)
    except ValueError:
        return (-3.0, -3.0, 3.0, 3.0)


def _metric_for_axioms(spec: str, domain: _D.DomainSpec):
    """A metric kind, or a callable for the coefficient constructions.

    Constructed metrics are spelled name:coefficient, e.g. psi:1 or chi:0.5.
    """
    if ":" not in spec:
        return _M.metric_kind(spec)
    name, _, ctext = spec.partition(":")
    c = float(ctext)
    if name == "psi":
        fn = lambda x, y: _M.psi_metric(c, x, y)  # noqa: E731
    elif name == "chi":
        fn = lambda x, y: _M.chi_metric(c, x, y)  # noqa: E731
    elif name == "upsilon":
        fn = lambda x, y: _M.upsilon_metric(c, domain, x, y)  # noqa: E731
    else:
        raise ValueError(f"unknown constructed metric {name!r}")
    fn.__name__ = f"{name}(c={c:g})"
    return fn


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _D.write_atomic(out, text)
        sys.stdout.write(_json_text({"written": out, "bytes": len(text)}))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_dist(args) -> int:
    domain = _load_domain(args.domain)
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    names = ["t", "jstar", "pointpair", "sratio"]
    if _M.supports_hyperbolic(domain):
        names += ["rho", "th_half_rho", "th_quarter_rho"]
    if args.metric != "all":
        names = [_M.metric_kind(args.metric).value]
    values = {name: _M.metric_value(name, domain, x, y) for name in names}
    payload = {
        "domain": _D.domain_to_json(domain),
        "x": list(x),
        "y": list(y),
        "values": values,
    }
    _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _control_entry() -> _bounds.InequalityEntry:
    """Deliberately false inequality used to prove the harness can fail."""
    return _bounds.InequalityEntry(
        entry_id="control_t_le_04_jstar",
        lhs=_bounds.Term(_M.MetricKind.T, 1.0, "t"),
        rhs=_bounds.Term(_M.MetricKind.JSTAR, 0.4, "0.4 jstar"),
        applies=lambda domain: True,
        statement="t <= 0.4 jstar (false on purpose)",
        sharp=False,
    )


def _cmd_verify_bounds(args) -> int:
    domain = _load_domain(args.domain)
    entries = [e for e in _bounds.catalog() if e.applicable(domain)]
    if args.inject_control:
        entries.append(_control_entry())
    reports = _bounds.fuzz_bounds(domain, args.n, args.seed, entries=entries)
    payload = {
        "domain": _D.domain_to_json(domain),
        "samples": args.n,
        "seed": args.seed,
        "reports": _bounds.reports_to_json(reports),
    }
    _emit(_json_text(payload), args.out)
    return _EXIT_VIOLATION if any(r.violations for r in reports) else _EXIT_OK


def _cmd_axioms(args) -> int:
    domain = _load_domain(args.domain)
    metric = _metric_for_axioms(args.metric, domain)
    report = _M.axiom_fuzz(domain, metric, args.n, args.seed)
    _emit(_json_text(report.to_dict()), args.out)
    if args.metric in ("pointpair", "p"):
        return _EXIT_OK  # not a metric in general; violations are findings
    return _EXIT_OK if report.clean else _EXIT_VIOLATION


def _build_map(args) -> _maps.MapSpec:
    name = args.map
    if name == "mobius":
        if args.a is None:
            raise ValueError("mobius needs --a re,im (or a real value)")
        coords = _parse_point(args.a) if "," in args.a else (float(args.a), 0.0)
        return _maps.MobiusDisk(complex(coords[0], coords[1]))
    if name == "cayley":
        return _maps.Cayley()
    if name == "power":
        if args.alpha is None or args.beta is None:
            raise ValueError("power needs --alpha and --beta")
        return _maps.PowerMap(args.alpha, args.beta)
    if name == "radial":
        if args.a is None:
            raise ValueError("radial needs --a in (0, 1)")
        return _maps.RadialMap(float(args.a))
    if name == "inversion":
        theta = args.theta
        if theta is None and args.domain is not None:
            dom = _load_domain(args.domain)
            if isinstance(dom, _D.Sector):
                theta = dom.theta
        if theta is None:
            raise ValueError("inversion needs --theta or --domain sector:<theta>")
        return _maps.SectorInversion(theta)
    raise ValueError(f"unknown map {name!r}")


def _cmd_lipschitz(args) -> int:
    m = _build_map(args)
    report = _maps.lipschitz_estimate(m, args.metric, args.n, args.seed)
    checks = []
    if isinstance(m, _maps.PowerMap):
        checks.append(_maps.power_map_bounds_check(m.alpha, m.beta, args.n, args.seed))
    elif isinstance(m, _maps.RadialMap):
        checks.append(_maps.radial_map_check(m.a, args.n, args.seed))
    elif isinstance(m, _maps.SectorInversion):
        checks.append(_maps.sector_inversion_s_invariance(m.theta, args.n, args.seed))
    payload = {
        "ratio": report.to_dict(),
        "checks": [c.to_dict() for c in checks],
    }
    _emit(_json_text(payload), args.out)
    bad = (not report.bound_respected) or any(c.violations for c in checks)
    return _EXIT_VIOLATION if bad else _EXIT_OK


def _cmd_conjecture(args) -> int:
    report = _maps.conjecture_search(args.n, args.seed, strategy=args.strategy)
    _emit(_json_text(report.to_dict()), args.out)
    # Findings here are surfaced in the artifact, never as a failing exit.
    return _EXIT_OK


def _cmd_render(args) -> int:
    domain = _load_domain(args.domain)
    center = _parse_point(args.center)
    box = _grid_bbox(domain, args.bbox)
    field = _B.grid_field(domain, args.metric, center, bbox=box,
                          resolution=args.resolution)
    if args.format == "csv":
        _emit(_B.field_to_csv(field), args.out)
        return _EXIT_OK
    levels = args.levels if args.levels is not None else [k / 10.0 for k in range(1, 10)]
    contours = _B.extract_contours(field, levels)
    if args.format == "json":
        _emit(_json_text(_B.contours_to_json(contours)), args.out)
    else:
        _emit(_B.render_svg(contours, domain, bbox=box), args.out)
    return _EXIT_OK


def _cmd_ball_props(args) -> int:
    domain = _load_domain(args.domain)
    center = _parse_point(args.center)
    if args.r is None or not 0.0 < args.r < 1.0:
        raise ValueError("ball-props needs --r strictly between 0 and 1")
    box = _grid_bbox(domain, args.bbox)
    touch = _B.touches_boundary(domain, args.metric, center, args.r,
                                bbox=box, resolution=args.resolution)
    star = _B.starlike_check(domain, args.metric, center, args.r,
                             n_dirs=args.n, seed=args.seed)
    field = _B.grid_field(domain, args.metric, center, bbox=box,
                          resolution=args.resolution)
    contour = _B.extract_contours(field, [args.r])[0]
    corners = _B.corner_points(contour, field.cell_diagonal)
    payload = {
        "domain": _D.domain_to_json(domain),
        "metric": _M.metric_kind(args.metric).value,
        "center": list(center),
        "r": args.r,
        "seed": args.seed,
        "touch": {
            "verdict": touch.verdict,
            "touches": touch.touches,
            "reach": touch.reach,
            "gap": touch.gap,
            "cell_diagonal": touch.cell_diagonal,
        },
        "starlike": {
            "starlike": star.starlike,
            "witness": list(star.witness) if star.witness else None,
            "directions": star.directions,
            "steps": star.steps,
        },
        "corners": [[float(a), float(b)] for a, b in corners],
    }
    _emit(_json_text(payload), args.out)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intrinsic-metrics",
        description="Boundary-aware metrics on Euclidean domains: distances, "
                    "bound checks, Lipschitz scans and metric-ball geometry.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, seeded=True):
        p.add_argument("--out", default=None, help="output path (atomic write); default stdout")
        if seeded:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--n", "-n", dest="n", type=int, default=10000,
                           help="sample count")

    p = sub.add_parser("dist", help="metric values for one point pair")
    p.add_argument("--domain", required=True)
    p.add_argument("--metric", default="all")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    add_common(p, seeded=False)
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("verify-bounds", help="fuzz the inequality catalog on a domain")
    p.add_argument("--domain", required=True)
    p.add_argument("--inject-control", action="store_true", help=argparse.SUPPRESS)
    add_common(p)
    p.set_defaults(func=_cmd_verify_bounds)

    p = sub.add_parser("axioms", help="fuzz metric axioms on random triples")
    p.add_argument("--domain", required=True)
    p.add_argument("--metric", default="t",
                   help="metric name, or psi:<c> / chi:<c> / upsilon:<c>")
    add_common(p)
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("lipschitz", help="sup of image/source metric ratios for a map")
    p.add_argument("--map", required=True,
                   choices=("mobius", "cayley", "power", "radial", "inversion"))
    p.add_argument("--metric", default="t")
    p.add_argument("--domain", default=None, help="sector:<theta> names the inversion angle")
    p.add_argument("--a", default=None, help="map parameter (mobius complex or radial exponent)")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_lipschitz)

    p = sub.add_parser("conjecture", help="normalized disk-automorphism ratio search")
    p.add_argument("--strategy", default="boundary-biased",
                   choices=("uniform", "boundary-biased"))
    add_common(p)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("render", help="contour SVG/JSON/CSV of a metric field")
    p.add_argument("--domain", required=True)
    p.add_argument("--metric", default="t")
    p.add_argument("--center", required=True)
    p.add_argument("--levels", type=_parse_levels, default=None,
                   help="level or start:stop:step (default 0.1:0.9:0.1)")
    p.add_argument("--resolution", type=_parse_resolution, default=512)
    p.add_argument("--bbox", type=_parse_bbox, default=None)
    p.add_argument("--format", default="svg", choices=("svg", "json", "csv"))
    add_common(p, seeded=False)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("ball-props", help="touching, starlikeness and corners of a ball")
    p.add_argument("--domain", required=True)
    p.add_argument("--metric", default="t")
    p.add_argument("--center", required=True)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--resolution", type=_parse_resolution, default=512)
    p.add_argument("--bbox", type=_parse_bbox, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_ball_props)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _D.OutsideDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
