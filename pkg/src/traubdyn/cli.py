"""Command-line frontend.

Subcommands:
  render-dyn    render a dynamical-plane basin image (PPM) + stats (CSV)
  render-param  render a damping-parameter plane (quadratic or cubic family)
  verify        run the numerical check suite, or re-check a bundled scene
  roots         print the roots of a polynomial
  stats         classification statistics only (CSV to stdout)

Complex values are written as `re,im`; root lists are ';'-separated. A JSON
file passed via --config supplies defaults that explicit flags override.
Exit codes: 0 ok, 1 usage error, 2 numeric failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import basins, paramplane, ppm, verify
from .basins import IterSettings, PlaneSpec, raster_stats
from .maps import TraubMap
from .poly import NonConvergence, Polynomial, poly_roots

__all__ = ["main"]

_MAX_PX = 8192


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse `re,im` (or a bare real) into a complex number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse complex value: {text!r}")


def parse_complex_list(text: str) -> list[complex]:
    items = [t for t in text.split(";") if t.strip()]
    if not items:
        raise UsageError("empty list of complex values")
    return [parse_complex(t) for t in items]


def _merged(args: argparse.Namespace, parser_defaults: dict) -> dict:
    """Flags override --config file values, which override parser defaults."""
    cfg = dict(parser_defaults)
    if getattr(args, "config", None):
        try:
            with open(args.config) as f:
                file_cfg = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}")
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        for k, v in file_cfg.items():
            cfg[k.replace("-", "_")] = v
    for k, v in vars(args).items():
        if v is not None and k not in ("config", "func"):
            cfg[k] = v
    return cfg


def _iter_settings(cfg, default_max=500) -> IterSettings:
    return IterSettings(
        max_iter=int(cfg.get("max_iter") or default_max),
        root_tol=float(cfg.get("root_tol") or 1e-10),
        escape_radius=float(cfg.get("escape_radius") or 1e8),
        cycle_window=int(cfg.get("cycle_window") or 40),
    )


def _plane_spec(cfg) -> PlaneSpec:
    if cfg.get("center") is None or cfg.get("width") is None:
        raise UsageError("--center and --width are required")
    center = cfg["center"] if isinstance(cfg["center"], complex) else parse_complex(str(cfg["center"]))
    width = float(cfg["width"])
    px = int(cfg.get("px") or 500)
    px_h = int(cfg.get("px_h") or px)
    if width <= 0:
        raise UsageError("width must be positive")
    if not (0 < px <= _MAX_PX and 0 < px_h <= _MAX_PX):
        raise UsageError(f"pixel counts must be in 1..{_MAX_PX}")
    return PlaneSpec(center=center, width=width, px_w=px, px_h=px_h)


def _polynomial(cfg) -> tuple[Polynomial, list | None]:
    coeffs, roots = cfg.get("coeffs"), cfg.get("roots")
    if (coeffs is None) == (roots is None):
        raise UsageError("give exactly one of --coeffs or --roots")
    if roots is not None:
        rts = roots if isinstance(roots, list) else parse_complex_list(str(roots))
        rts = [r if isinstance(r, complex) else parse_complex(str(r)) for r in rts]
        return Polynomial.from_roots(rts), rts
    cs = coeffs if isinstance(coeffs, list) else parse_complex_list(str(coeffs))
    cs = [c if isinstance(c, complex) else parse_complex(str(c)) for c in cs]
    p = Polynomial(cs)
    if p.degree < 2:
        raise UsageError("polynomial degree must be at least 2")
    return p, None


def _workers(cfg) -> int:
    w = cfg.get("workers")
    if w is None:
        w = os.environ.get("TRAUBDYN_WORKERS", "1")
    try:
        w = int(w)
    except ValueError:
        raise UsageError(f"bad worker count: {w!r}")
    if w < 1:
        raise UsageError("worker count must be >= 1")
    return w


def _stats_csv(rows) -> str:
    lines = ["class,pixel_fraction,mean_iterations"]
    for cls, frac, mean in rows:
        lines.append(f"{cls},{frac:.10g},{mean:.10g}")
    return "\n".join(lines) + "\n"


def _class_name(cls, n_roots):
    if cls == basins.OTHER_CLASS:
        return "Other"
    if cls == basins.INFINITY_CLASS:
        return "Infinity"
    return f"Root{cls}"


def _build_map(cfg) -> TraubMap:
    p, roots = _polynomial(cfg)
    if cfg.get("delta") is None:
        raise UsageError("--delta is required")
    delta = cfg["delta"] if isinstance(cfg["delta"], complex) else parse_complex(str(cfg["delta"]))
    if roots is not None:
        return TraubMap.from_roots(roots, delta)
    return TraubMap(p, delta)


# -- subcommands ----------------------------------------------------------


def cmd_render_dyn(args, defaults):
    cfg = _merged(args, defaults)
    m = _build_map(cfg)
    spec = _plane_spec(cfg)
    s = _iter_settings(cfg)
    out = cfg.get("out")
    if not out:
        raise UsageError("--out is required")
    r = basins.render_dynamical_plane(m, spec, s, workers=_workers(cfg))
    ppm.write_ppm(f"{out}.ppm", ppm.colorize_basin(r, s.max_iter))
    rows = [(_class_name(c, len(m.roots)), f, mi) for c, f, mi in raster_stats(r)]
    with open(f"{out}.csv", "w", newline="") as f:
        f.write(_stats_csv(rows))
    return 0


def cmd_render_param(args, defaults):
    cfg = _merged(args, defaults)
    kind = cfg.get("kind")
    if kind not in ("quadratic", "cubic"):
        raise UsageError("--kind must be quadratic or cubic")
    spec = _plane_spec(cfg)
    s = _iter_settings(cfg, default_max=300)
    out = cfg.get("out")
    if not out:
        raise UsageError("--out is required")
    r = paramplane.render_param_plane(kind, spec, s, workers=_workers(cfg))
    ppm.write_ppm(f"{out}.ppm", ppm.colorize_param(r, s.max_iter))
    names = ("ToZero", "ToInfinity") if kind == "quadratic" else ("Root0", "Root1", "Root2")
    total = r.classes[0].size
    rows = []
    for i, name in enumerate(names):
        hit = r.classes[0] == i
        frac = float(np.mean(hit))
        mean = float(np.mean(r.iters[0][hit])) if hit.any() else 0.0
        rows.append((name, frac, mean))
    other = r.classes[0] == paramplane.PARAM_OTHER
    if other.any():
        rows.append(("Other", float(np.mean(other)), float(np.mean(r.iters[0][other]))))
    del total
    with open(f"{out}.csv", "w", newline="") as f:
        f.write(_stats_csv(rows))
    return 0


def cmd_verify(args, defaults):
    cfg = _merged(args, defaults)
    figure = cfg.get("figure")
    seed = int(cfg.get("seed") or 0)
    if figure:
        if figure not in verify.FIGURE_IDS:
            raise UsageError(f"unknown figure id: {figure} (choose from {', '.join(verify.FIGURE_IDS)})")
        reports = [verify.check_figure(figure)]
    else:
        reports = verify.run_all(seed)
    print(verify.report_table(reports))
    return 0 if all(r.passed for r in reports) else 3


def cmd_roots(args, defaults):
    cfg = _merged(args, defaults)
    p, roots = _polynomial(cfg)
    if roots is None:
        roots = poly_roots(p)
    for r in sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
        print(f"{r.real:.10g},{r.imag:.10g}")
    return 0


def cmd_stats(args, defaults):
    cfg = _merged(args, defaults)
    m = _build_map(cfg)
    spec = _plane_spec(cfg)
    s = _iter_settings(cfg)
    r = basins.render_dynamical_plane(m, spec, s, workers=_workers(cfg))
    rows = [(_class_name(c, len(m.roots)), f, mi) for c, f, mi in raster_stats(r)]
    sys.stdout.write(_stats_csv(rows))
    return 0


# -- argument parsing -----------------------------------------------------


def _add_common_poly(sp):
    sp.add_argument("--coeffs", help="ascending coefficients, 're,im' pairs ';'-separated")
    sp.add_argument("--roots", help="roots, 're,im' pairs ';'-separated")
    sp.add_argument("--delta", help="damping parameter as 're,im'")


def _add_common_plane(sp):
    sp.add_argument("--center", help="viewport center as 're,im'")
    sp.add_argument("--width", type=float, help="viewport width (real axis span)")
    sp.add_argument("--px", type=int, help="horizontal pixel count (default 500)")
    sp.add_argument("--px-h", dest="px_h", type=int, help="vertical pixel count (default: same as --px)")
    sp.add_argument("--max-iter", dest="max_iter", type=int)
    sp.add_argument("--root-tol", dest="root_tol", type=float)
    sp.add_argument("--escape-radius", dest="escape_radius", type=float)
    sp.add_argument("--cycle-window", dest="cycle_window", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--config", help="JSON file with defaults; flags override")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="traubdyn", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("render-dyn", help="render basins of a damped-iteration map")
    _add_common_poly(sp)
    _add_common_plane(sp)
    sp.add_argument("--out", help="output path prefix (writes .ppm and .csv)")
    sp.set_defaults(func=cmd_render_dyn)

    sp = sub.add_parser("render-param", help="render a damping-parameter plane")
    sp.add_argument("--kind", choices=["quadratic", "cubic"])
    _add_common_plane(sp)
    sp.add_argument("--out", help="output path prefix (writes .ppm and .csv)")
    sp.set_defaults(func=cmd_render_param)

    sp = sub.add_parser("verify", help="run the numerical check suite")
    sp.add_argument("--figure", help="re-check a bundled scene: " + ", ".join(verify.FIGURE_IDS))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--config", help="JSON file with defaults; flags override")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("roots", help="print the roots of a polynomial")
    sp.add_argument("--coeffs", help="ascending coefficients, 're,im' pairs ';'-separated")
    sp.add_argument("--roots", help="roots, echoed back sorted")
    sp.add_argument("--config", help="JSON file with defaults; flags override")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("stats", help="classification statistics only (CSV to stdout)")
    _add_common_poly(sp)
    _add_common_plane(sp)
    sp.set_defaults(func=cmd_stats)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    defaults = {}
    try:
        return args.func(args, defaults)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonConvergence, ValueError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
