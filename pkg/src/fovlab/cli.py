"""Command-line front end.

Subcommands::

    fovlab fov     --in A.mtx [--angles N] [--out B.csv] [--svg B.svg]
    fovlab gfov    --in A.json [--samples N] [--seed S]
    fovlab givens  --in A.json (--metric-from-eigenbasis | --metric-file H.json)
    fovlab verify  --in A.json [--tol T] [--json]
    fovlab gen     --spectrum 1,2+1i,3 --cond 100 --seed 0 [--out A.json]

Exit codes: 0 ok, 1 usage, 2 parse (bad input file), 3 numerical failure or
failed verification.
"""

import argparse
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import linalg as sla

from . import __version__
from .errors import DimensionMismatch, FovlabError, NumericalError, ParseError
from .fov import DEFAULT_ANGLES, fov_boundary, givens_fov_boundary
from .gfov import cross_tol, definiteness, gfov, gfov_samples, sample_tol, verify_gfov_properties
from .matcore import COND_LIMIT, Metric, as_matrix
from .matio import detect_format, format_matrix, read_matrix
from .rayleigh import (
    min_inner_product_report,
    min_residual_report,
    rq,
    rq_gen,
    rq_naive,
    stationarity_gradient,
)
from .spectra import eig, gen_prescribed, is_real_spectrum, spectral_order
from .variational import cf_tol, courant_fischer_verify, rayleigh_ritz_extrema

FORMAT_VERSION = "fovlab-output 1"
DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 42
SVG_SIZE = 600
STATIONARY_BAND = 1e-3

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERICAL = 0, 1, 2, 3

_FORMAT_ALIASES = {"mm": "matrix-market", "mtx": "matrix-market", "matrix-market": "matrix-market", "json": "json"}
_COMPLEX_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?"
    r"|(?P<imo>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i))\s*$"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_complex(text):
    """Parse ``a+bi`` syntax: ``2``, ``-1.5``, ``3i``, ``-i``, ``1-2e-3i``."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise UsageError(f"not a complex number in a+bi form: {text!r}")

    def imag(tok):
        body = tok[:-1]
        return float(body + "1") if body in ("", "+", "-") else float(body)

    if m.group("imo") is not None:
        return complex(0.0, imag(m.group("imo")))
    im = imag(m.group("im")) if m.group("im") else 0.0
    return complex(float(m.group("re")), im)


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str]
    format: Optional[str]
    n_angles: int
    n_samples: int
    seed: int
    tol: Optional[float]
    cond_limit: float
    metric: Optional[str] = None

    def header(self):
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def _default_seed():
    raw = os.environ.get("FOVLAB_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FOVLAB_SEED must be an integer, got {raw!r}") from None


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError("must be finite and nonnegative")
    return v


def _positive_float(text):
    v = _nonneg_float(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _format_arg(text):
    try:
        return _FORMAT_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError("format must be matrix-market (mm) or json") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="input", required=True, help="matrix file (.mtx/.mm or .json)")
    common.add_argument("--format", type=_format_arg, help="override format detection: mm or json")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--angles", type=_positive_int, default=DEFAULT_ANGLES, help="supporting-line angles")
    common.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES, help="random samples")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default $FOVLAB_SEED or {DEFAULT_SEED})")
    common.add_argument("--tol", type=_nonneg_float, default=None, help="tolerance override")
    common.add_argument("--cond-limit", type=_positive_float, default=COND_LIMIT, help="largest accepted cond(V)")

    plot = _Parser(add_help=False)
    plot.add_argument("--svg", help="also render an SVG plot to this file")

    parser = _Parser(prog="fovlab", description="Fields of values of complex matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("fov", parents=[common, plot], help="classical field of values F(A)")
    sub.add_parser(
        "gfov", parents=[common, plot], help="two-sided field G(A) with definitional samples"
    )
    p = sub.add_parser("givens", parents=[common, plot], help="Givens field F_H(A)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--metric-from-eigenbasis", action="store_true", help="H = (V V*)^-1")
    g.add_argument("--metric-file", help="file holding a Hermitian positive definite H")

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("gen", help="generate a matrix with prescribed spectrum")
    p.add_argument("--spectrum", required=True, help="comma-separated a+bi values")
    p.add_argument("--cond", type=float, default=1.0, help="target cond(V) >= 1")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="output file (default: stdout, json)")
    p.add_argument("--format", type=_format_arg, help="override format detection: mm or json")
    return parser


# -- output ------------------------------------------------------------------


def _emit(text, path, stdout):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def render_csv(config, polygon, eigenvalues, samples=()):
    buf = io.StringIO()
    buf.write(f"# {FORMAT_VERSION}\n# config {config.header()}\nre,im,kind\n")
    for kind, pts in (("boundary-vertex", polygon.vertices), ("eigenvalue", eigenvalues), ("sample", samples)):
        for z in pts:
            buf.write(f"{float(z.real)!r},{float(z.imag)!r},{kind}\n")
    return buf.getvalue()


def render_svg(config, polygon, eigenvalues, samples=()):
    """600x600 plot of the polygon, eigenvalues (crosses) and samples (dots),
    fitted to the polygon's bounding box plus a 10% margin."""
    pts = np.concatenate([polygon.vertices, np.asarray(eigenvalues, dtype=complex)])
    x0, x1 = float(pts.real.min()), float(pts.real.max())
    y0, y1 = float(pts.imag.min()), float(pts.imag.max())
    span = max(x1 - x0, y1 - y0)
    if span == 0:
        span = max(1.0, abs(x0), abs(y0))
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    half = 0.5 * span * 1.2
    s = SVG_SIZE / (2 * half)

    def xy(z):
        return s * (z.real - (cx - half)), s * ((cy + half) - z.imag)

    def pt(z):
        x, y = xy(z)
        return f"{x:.3f},{y:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f"<!-- {FORMAT_VERSION} -->",
        f"<!-- config {config.header()} -->",
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    # axes through the origin when it is in view
    ox, oy = xy(0j)
    if 0 <= ox <= SVG_SIZE:
        out.append(f'<line x1="{ox:.3f}" y1="0" x2="{ox:.3f}" y2="{SVG_SIZE}" stroke="#bbb"/>')
    if 0 <= oy <= SVG_SIZE:
        out.append(f'<line x1="0" y1="{oy:.3f}" x2="{SVG_SIZE}" y2="{oy:.3f}" stroke="#bbb"/>')
    verts = " ".join(pt(z) for z in polygon.vertices)
    if len(polygon) >= 3:
        out.append(f'<polygon points="{verts}" fill="#cfe0f5" stroke="#1f4e9a" stroke-width="1.5"/>')
    elif len(polygon) == 2:
        out.append(f'<polyline points="{verts}" fill="none" stroke="#1f4e9a" stroke-width="2"/>')
    else:
        x, y = xy(polygon.vertices[0])
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#1f4e9a"/>')
    for z in samples:
        x, y = xy(z)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="1.2" fill="#555"/>')
    for z in eigenvalues:
        x, y = xy(z)
        out.append(
            f'<path d="M{x - 5:.3f},{y - 5:.3f}L{x + 5:.3f},{y + 5:.3f}'
            f'M{x - 5:.3f},{y + 5:.3f}L{x + 5:.3f},{y - 5:.3f}" stroke="#c0392b" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- commands ----------------------------------------------------------------


def _config(args, metric=None):
    return RunConfig(
        command=args.command,
        input=args.input,
        format=args.format,
        n_angles=args.angles,
        n_samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        cond_limit=args.cond_limit,
        metric=metric,
    )


def _sorted_eigenvalues(a):
    try:
        lam = sla.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(str(exc)) from exc
    return lam[spectral_order(lam)]


def _write_plot(args, config, polygon, lam, samples, stdout):
    _emit(render_csv(config, polygon, lam, samples), args.out, stdout)
    if getattr(args, "svg", None):
        _emit(render_svg(config, polygon, lam, samples), args.svg, stdout)


def cmd_fov(args, a, stdout, stderr):
    config = _config(args)
    poly = fov_boundary(a, args.angles)
    _write_plot(args, config, poly, _sorted_eigenvalues(a), (), stdout)
    return EXIT_OK


def cmd_gfov(args, a, stdout, stderr):
    config = _config(args)
    res = gfov(a, n_samples=0, cond_limit=args.cond_limit)
    e = res.eig_system
    samples = gfov_samples(a, args.samples, args.seed, e=e)
    tol = sample_tol(e) if args.tol is None else args.tol * e.scale
    outside = res.polygon.distance(samples)
    _write_plot(args, config, res.polygon, e.lam, samples, stdout)
    status = EXIT_OK
    if not res.cross_ok:
        stderr.write(f"gfov: Givens-route cross-check gap {res.cross_gap:.3e} above tolerance\n")
        status = EXIT_NUMERICAL
    bad = int(np.sum(outside > tol))
    if bad:
        stderr.write(f"gfov: {bad} of {len(samples)} samples outside G(A) by more than {tol:.3e}\n")
        status = EXIT_NUMERICAL
    return status


def cmd_givens(args, a, stdout, stderr):
    if args.metric_from_eigenbasis:
        metric = eig(a, cond_limit=args.cond_limit).metric
        label = "eigenbasis"
    else:
        metric = Metric.from_hpd(read_matrix(args.metric_file))
        label = f"file:{args.metric_file}"
    config = _config(args, metric=label)
    poly = givens_fov_boundary(a, metric, args.angles)
    _write_plot(args, config, poly, _sorted_eigenvalues(a), (), stdout)
    return EXIT_OK


def cmd_gen(args, stdout, stderr):
    spectrum = [parse_complex(t) for t in args.spectrum.split(",")]
    if not args.cond >= 1 or not np.isfinite(args.cond):
        raise UsageError("--cond must be a finite number >= 1")
    a = gen_prescribed(spectrum, args.cond, seed=args.seed)
    fmt = args.format or (detect_format(args.out) if args.out else "json")
    _emit(format_matrix(a, fmt), args.out, stdout)
    cond_v = eig(a, cond_limit=np.inf).cond_v
    (stderr if not args.out else stdout).write(f"condV={cond_v!r}\n")
    return EXIT_OK


# -- verify ------------------------------------------------------------------


@dataclass(frozen=True)
class CheckLine:
    name: str
    status: str
    gap: float
    tol: float

    def text(self):
        if self.status == "skipped":
            return f"{self.name:<20} skipped"
        return f"{self.name:<20} {self.status:<4} gap={self.gap:.3e} tol={self.tol:.3e}"


def _line(name, gap, tol):
    return CheckLine(name, "pass" if gap <= tol else "fail", float(gap), float(tol))


def _grid_gap(g):
    return max(0.0, -g.min_gap, g.gap_at_rho) if g.argmin_ok else float("inf")


def run_checks(a, seed=DEFAULT_SEED, n_samples=DEFAULT_SAMPLES, tol=None, cond_limit=COND_LIMIT):
    """Property suite for one matrix; returns ``(lines, definiteness class)``.

    ``tol`` replaces the base relative tolerance of every identity check
    (each is still multiplied by its own scale and conditioning factors).
    The stationarity band is a finite-difference heuristic and keeps its
    fixed 1e-3 threshold.
    """
    a = as_matrix(a)
    n = a.shape[0]
    e = eig(a, cond_limit=cond_limit)
    scale, cond_v = e.scale, e.cond_v
    anorm = max(float(np.linalg.norm(a, 2)), np.finfo(float).tiny)
    rng = np.random.default_rng(seed)
    base = (lambda d: d) if tol is None else (lambda d: tol)
    out = []

    props = verify_gfov_properties(a, tol=base(1e-8), cond_limit=cond_limit)
    for c in props.checks:
        out.append(CheckLine(c.name, c.status, c.gap, c.tol))

    res = gfov(a, n_samples=0, e=e)
    ct = cross_tol(e) if tol is None else tol * scale * max(1.0, cond_v / 1e3) ** 2
    out.append(_line("givens_route", res.cross_gap, ct))
    vals = gfov_samples(a, n_samples, seed, e=e)
    st = sample_tol(e) if tol is None else tol * scale * max(1.0, cond_v / 1e3)
    out.append(_line("samples_inside", float(np.max(res.polygon.distance(vals))), st))

    # quotient chain at the eigenpairs
    gap = 0.0
    for i in range(n):
        p = e.pair(i)
        for val in (rq(p.right, a), rq_naive(p.left, p.right, a), rq_gen(p.right, a, e).value):
            gap = max(gap, abs(val - p.value))
    out.append(_line("eigenpair_quotients", gap, base(1e-9) * max(1.0, cond_v) * scale))

    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    right, left = min_residual_report(u, a, e, tol=base(1e-10))
    out.append(_line("min_residual_right", _grid_gap(right), right.tol))
    out.append(_line("min_residual_left", _grid_gap(left), left.tol))

    real_spec = is_real_spectrum(e)
    real_mat = bool(np.all(a.imag == 0))
    if real_spec and real_mat:
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        g = min_inner_product_report(y, x, a.real, tol=base(1e-10))
        out.append(_line("min_inner_product", _grid_gap(g), g.tol))
    else:
        out.append(CheckLine("min_inner_product", "skipped", float("nan"), float("nan")))

    st_gap = max(stationarity_gradient(e.left[:, i], e.v[:, i], a) for i in range(n)) / anorm
    out.append(_line("stationarity", st_gap, STATIONARY_BAND))

    if real_spec:
        lam = e.lam.real
        rr_tol = base(1e-8) * (1 + float(np.max(np.abs(lam)))) * (1 + cond_v / 1e3)
        lo, hi = rayleigh_ritz_extrema(a, e, 0)
        # sandwich: worst excursion of sampled quotients outside [lo, hi]
        x = rng.standard_normal((n, n_samples)) + 1j * rng.standard_normal((n, n_samples))
        yv = e.metric.h @ x
        q = np.einsum("ik,ik->k", yv.conj(), a @ x) / np.einsum("ik,ik->k", yv.conj(), x).real
        excursion = float(np.max(np.maximum.reduce([lo - q.real, q.real - hi, np.abs(q.imag)])))
        rr_gap = max(abs(lo - lam[0]), abs(hi - lam[-1]), excursion, 0.0)
        out.append(_line("rayleigh_ritz", rr_gap, rr_tol))

        trials = max(20, min(200, 2000 // n))
        worst = 0.0
        for j in range(1, n + 1):
            for direction in ("min-max", "max-min"):
                r = courant_fischer_verify(a, e, j, trials, seed, direction)
                # gaps relative to the per-index tolerance scale
                worst = max(worst, max(r.bound_gap, r.attained_gap) / (cf_tol(e, j) / 1e-8))
        out.append(_line("courant_fischer", worst, base(1e-8)))
    else:
        out.append(CheckLine("rayleigh_ritz", "skipped", float("nan"), float("nan")))
        out.append(CheckLine("courant_fischer", "skipped", float("nan"), float("nan")))
    return out, definiteness(a, seed=seed, e=e).classification


def cmd_verify(args, a, stdout, stderr):
    config = _config(args)
    lines, cls = run_checks(a, args.seed, args.samples, args.tol, args.cond_limit)
    ok = all(c.status != "fail" for c in lines)
    if args.json:
        def num(v):
            return None if np.isnan(v) else (repr(v) if np.isinf(v) else v)

        doc = {
            "format": FORMAT_VERSION,
            "config": asdict(config),
            "definiteness": cls,
            "passed": ok,
            "checks": [
                {"name": c.name, "status": c.status, "gap": num(c.gap), "tol": num(c.tol)}
                for c in lines
            ],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = f"# {FORMAT_VERSION}\n# config {config.header()}\n"
        text += "".join(c.text() + "\n" for c in lines)
        text += f"definiteness         {cls}\n"
        text += f"result               {'pass' if ok else 'fail'}\n"
    _emit(text, args.out, stdout)
    return EXIT_OK if ok else EXIT_NUMERICAL


_COMMANDS = {"fov": cmd_fov, "gfov": cmd_gfov, "givens": cmd_givens, "verify": cmd_verify}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        if args.command == "gen":
            return cmd_gen(args, stdout, stderr)
        if not os.path.isfile(args.input):
            raise UsageError(f"no such input file: {args.input}")
        if args.command == "givens" and args.metric_file and not os.path.isfile(args.metric_file):
            raise UsageError(f"no such metric file: {args.metric_file}")
        if args.format is None:
            try:
                args.format = detect_format(args.input)
            except ParseError as exc:
                raise UsageError(f"{exc}; pass --format") from None
        a = as_matrix(read_matrix(args.input, args.format))
        return _COMMANDS[args.command](args, a, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (ParseError, DimensionMismatch) as exc:
        stderr.write(f"fovlab: input error: {exc}\n")
        return EXIT_PARSE
    except NumericalError as exc:
        stderr.write(f"fovlab: numerical error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL
    except FovlabError as exc:
        stderr.write(f"fovlab: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
