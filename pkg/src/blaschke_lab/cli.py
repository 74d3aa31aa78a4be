"""Command-line frontend: deterministic CSV tables (optional SVG plots).

Commands: coeffs, norms, regions, predict, scaling, weyl.  Floats are written
with 17 significant digits, so CSV output round-trips doubles exactly and two
runs with the same configuration are byte-identical.

Exit codes: 2 on configuration errors, 3 on computation errors, 4 on I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .asymptotics import airy_predict, airy_window, sup_coefficient
from .engines import (coeff_exact, coeff_oscillatory, coeff_series_exact,
                      coeff_series_fft)
from .errors import BlaschkeLabError, DomainError
from .norms import Region, lp_norm, region_partition
from .params import make_params
from .scaling import (p4_model_residuals, p4_ratio_scan, run_norm_scaling,
                      weyl_sums)
from .svgplot import line_plot_svg

COMMANDS = ("coeffs", "norms", "regions", "predict", "scaling", "weyl")


def fmt(value) -> str:
    """17-significant-digit decimal; exact round-trip for doubles."""
    return format(float(value), ".17g")


@dataclass
class RunConfig:
    command: str
    lam: Fraction
    n: int | None = None
    n_grid: tuple = ()
    p: float | None = None
    p_list: tuple = ()
    kmax: int | None = None
    k_list: tuple = ()
    alpha: Fraction | None = None
    engine: str = "exact"
    j: int = 1
    with_exact: bool = False
    output_dir: Path = field(default_factory=lambda: Path("."))
    emit_svg: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not (0 < self.lam < 1):
            raise DomainError("lambda must lie in (0, 1)")


def parse_lambda(text: str) -> Fraction:
    try:
        lam = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse lambda {text!r} as a rational") from exc
    return lam


def parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(Fraction(text)) if "/" in text else float(text)


def parse_grid(text: str) -> tuple:
    """'128:8192' -> (128, 256, ..., 8192), ratio 2."""
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise DomainError(f"grid must look like '128:8192', got {text!r}") from exc
    if lo < 1 or hi < lo:
        raise DomainError(f"bad grid bounds {text!r}")
    grid = []
    n = lo
    while n <= hi:
        grid.append(n)
        n *= 2
    return tuple(grid)


def emit_csv(records, path: Path, header, footer_lines=()):
    """Write header + rows (+ '#'-prefixed footer); records must be nonempty."""
    records = list(records)
    if not records:
        raise DomainError("refusing to write an empty CSV")
    lines = [",".join(header)]
    for rec in records:
        lines.append(",".join(rec))
    lines.extend(f"# {line}" for line in footer_lines)
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _cmd_coeffs(cfg: RunConfig):
    params = make_params(cfg.lam, cfg.n)
    kmax = cfg.kmax if cfg.kmax is not None else params.default_kmax()
    if cfg.engine == "exact":
        series = coeff_series_exact(params, kmax)
    elif cfg.engine == "fft":
        series = coeff_series_fft(params, kmax)
    elif cfg.engine == "oscillatory":
        rows = [(k, coeff_oscillatory(params, k)) for k in range(kmax + 1)]
        series = None
    else:
        raise DomainError(f"unknown engine {cfg.engine!r}")
    path = cfg.output_dir / "coeffs.csv"
    if series is not None:
        records = [(str(k), fmt(v), fmt(series.achieved_abs_error), series.engine)
                   for k, v in enumerate(series.values)]
        values = list(map(float, series.values))
    else:
        records = [(str(k), fmt(v), fmt(1e-11), "oscillatory") for k, v in rows]
        values = [v for _, v in rows]
    emit_csv(records, path, header=("k", "value", "abs_error", "engine"),
             footer_lines=(f"lambda={cfg.lam},n={cfg.n},kmax={kmax}",))
    if cfg.emit_svg:
        ks = list(range(kmax + 1))
        mags = [abs(v) if abs(v) > 0 else float("nan") for v in values]
        pairs = [(k, m) for k, m in zip(ks, mags) if m == m]
        svg = line_plot_svg(
            [("|coefficient|", [k for k, _ in pairs], [m for _, m in pairs])],
            title=f"coefficient profile lambda={cfg.lam} n={cfg.n}",
            xlabel="k", ylabel="|c(k)|", logy=True,
            vlines=(float(params.alpha0) * cfg.n, float(params.alpha0_inv) * cfg.n))
        (cfg.output_dir / "coeffs.svg").write_text(svg, encoding="ascii")
    return [path]


def _cmd_norms(cfg: RunConfig):
    params = make_params(cfg.lam, cfg.n)
    kmax = cfg.kmax if cfg.kmax is not None else params.default_kmax()
    series = coeff_series_fft(params, kmax)
    ps = cfg.p_list or ((cfg.p,) if cfg.p is not None else (1.0, 2.0, 4.0, math.inf))
    records = []
    for p in ps:
        report = lp_norm(series, p)
        masses = report.per_region_mass
        mass_cells = [fmt(masses[r]) if masses else "" for r in Region]
        records.append((("inf" if p == math.inf else fmt(p)), fmt(report.value),
                        *mass_cells, fmt(report.tail_certificate)))
    path = cfg.output_dir / "norms.csv"
    emit_csv(records, path,
             header=("p", "value", *(f"mass_{r.name}" for r in Region), "tail_certificate"),
             footer_lines=(f"lambda={cfg.lam},n={cfg.n},kmax={kmax},engine={series.engine}",))
    return [path]


def _cmd_regions(cfg: RunConfig):
    params = make_params(cfg.lam, cfg.n)
    alpha = cfg.alpha if cfg.alpha is not None else params.alpha0 / 2
    partition = region_partition(params, alpha)
    records = []
    for region, (lo, hi) in partition.ranges().items():
        records.append((region.name, str(lo), "" if hi is None else str(hi - 1)))
    path = cfg.output_dir / "regions.csv"
    emit_csv(records, path, header=("region", "k_first", "k_last"),
             footer_lines=(
                 f"lambda={cfg.lam},n={cfg.n},alpha={alpha}",
                 "boundaries=" + ":".join(str(b) for b in partition.boundaries),
             ))
    return [path]


def _cmd_predict(cfg: RunConfig):
    params = make_params(cfg.lam, cfg.n)
    if cfg.k_list:
        ks = list(cfg.k_list)
    else:
        lo, hi = airy_window(params)
        step = max(1, (hi - lo) // 64)
        ks = list(range(lo, hi + 1, step))
    exact_vals = {}
    if cfg.with_exact:
        exact_vals = {k: float(coeff_exact(params, k)) for k in ks}
    records = []
    for k in ks:
        pred = airy_predict(params, k)
        row = [str(k), fmt(pred.alpha), fmt(pred.delta2), fmt(pred.airy_argument),
               fmt(pred.a0), fmt(pred.predicted), str(int(pred.in_window))]
        if cfg.with_exact:
            ex = exact_vals[k]
            rel = abs(pred.predicted - ex) / abs(ex) if ex else math.inf
            row.extend([fmt(ex), fmt(rel)])
        records.append(tuple(row))
    header = ["k", "alpha", "delta2", "airy_argument", "a0", "predicted", "in_window"]
    if cfg.with_exact:
        header.extend(["exact", "rel_error"])
    path = cfg.output_dir / "predict.csv"
    emit_csv(records, path, header=tuple(header),
             footer_lines=(f"lambda={cfg.lam},n={cfg.n}",))
    if cfg.emit_svg and cfg.with_exact:
        svg = line_plot_svg(
            [("predicted", ks, [abs(float(r[5])) for r in records]),
             ("exact", ks, [abs(exact_vals[k]) for k in ks])],
            title=f"uniform saddle-point prediction lambda={cfg.lam} n={cfg.n}",
            xlabel="k", ylabel="|c(k)|")
        (cfg.output_dir / "predict.svg").write_text(svg, encoding="ascii")
    return [path]


def _cmd_scaling(cfg: RunConfig):
    ps = cfg.p_list or (cfg.p,)
    paths = []
    for p in ps:
        if p is None:
            raise DomainError("scaling requires --p or --p-list")
        fit = run_norm_scaling(cfg.lam, p, cfg.n_grid)
        records = [(str(n), fmt(v), fmt(fit.abscissa(n)), fmt(math.log(v)))
                   for n, v in zip(fit.n_grid, fit.norms)]
        footer = [f"slope={fmt(fit.fitted_slope)},stderr={fmt(fit.slope_stderr)},"
                  f"theory={fmt(float(fit.theory_slope))}"]
        if p == 4:
            ratios = p4_ratio_scan(cfg.lam, cfg.n_grid)
            sse_log, sse_pure = p4_model_residuals(cfg.lam, cfg.n_grid)
            footer.append("ratio_scan=" + ";".join(f"{n}:{fmt(r)}" for n, r in ratios))
            footer.append(f"sse_log={fmt(sse_log)},sse_pure={fmt(sse_pure)}")
        tag = "inf" if p == math.inf else f"{p:g}".replace(".", "_")
        path = cfg.output_dir / f"scaling_p{tag}.csv"
        emit_csv(records, path, header=("n", "norm", "log_n", "log_norm"),
                 footer_lines=footer)
        paths.append(path)
        if cfg.emit_svg:
            svg = line_plot_svg(
                [(f"p={p}", list(fit.n_grid), list(fit.norms))],
                title=f"norm scaling lambda={cfg.lam}",
                xlabel="n", ylabel="norm", logx=True, logy=True)
            (cfg.output_dir / f"scaling_p{tag}.svg").write_text(svg, encoding="ascii")
    return paths


def _cmd_weyl(cfg: RunConfig):
    exp = weyl_sums(cfg.lam, cfg.n, cfg.j)
    ks = range(exp.k_lo, exp.k_hi + 1)
    records = [(str(k), fmt(s), fmt(abs(a)))
               for k, s, a in zip(ks, exp.s_values, exp.partial_sums)]
    path = cfg.output_dir / "weyl.csv"
    emit_csv(records, path, header=("k", "s", "abs_A"),
             footer_lines=(
                 f"lambda={cfg.lam},n={cfg.n},j={cfg.j}",
                 f"max_abs_A={fmt(exp.max_abs_A)},window={exp.k_lo}:{exp.k_hi}",
             ))
    if cfg.emit_svg:
        svg = line_plot_svg(
            [("|A_k|", list(ks), [abs(a) for a in exp.partial_sums])],
            title=f"partial exponential sums lambda={cfg.lam} n={cfg.n} j={cfg.j}",
            xlabel="k", ylabel="|A_k|")
        (cfg.output_dir / "weyl.svg").write_text(svg, encoding="ascii")
    return [path]


_DISPATCH = {
    "coeffs": _cmd_coeffs,
    "norms": _cmd_norms,
    "regions": _cmd_regions,
    "predict": _cmd_predict,
    "scaling": _cmd_scaling,
    "weyl": _cmd_weyl,
}


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit status."""
    try:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        written = _DISPATCH[cfg.command](cfg)
    except BlaschkeLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    for path in written:
        print(path)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blaschke-lab",
        description="Coefficient engines, norms and scaling experiments for "
                    "powers of a disk automorphism")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, n_required=True):
        sp.add_argument("--lambda", dest="lam", required=True, metavar="P/Q",
                        help="zero location as an exact rational in (0,1)")
        if n_required:
            sp.add_argument("--n", type=int, required=True, help="power")
        sp.add_argument("--output-dir", type=Path, default=Path("."))
        sp.add_argument("--svg", action="store_true", dest="emit_svg")
        sp.add_argument("--config", type=Path, default=None,
                        help="JSON file with defaults for any flag")

    sp = sub.add_parser("coeffs", help="coefficient table")
    common(sp)
    sp.add_argument("--kmax", type=int, default=None)
    sp.add_argument("--engine", choices=("exact", "fft", "oscillatory"),
                    default="exact")

    sp = sub.add_parser("norms", help="lp norms with per-region masses")
    common(sp)
    sp.add_argument("--p", type=str, default=None)
    sp.add_argument("--p-list", type=str, default=None, metavar="P1,P2,...")
    sp.add_argument("--kmax", type=int, default=None)

    sp = sub.add_parser("regions", help="region partition table")
    common(sp)
    sp.add_argument("--alpha", type=str, default=None, metavar="P/Q")

    sp = sub.add_parser("predict", help="uniform saddle-point predictions")
    common(sp)
    sp.add_argument("--k-list", type=str, default=None, metavar="K1,K2,...")
    sp.add_argument("--with-exact", action="store_true")

    sp = sub.add_parser("scaling", help="norm scaling over an n-grid")
    common(sp, n_required=False)
    sp.add_argument("--p", type=str, default=None)
    sp.add_argument("--p-list", type=str, default=None)
    sp.add_argument("--grid", type=str, required=True, metavar="NMIN:NMAX")

    sp = sub.add_parser("weyl", help="fractional-part equidistribution sums")
    common(sp)
    sp.add_argument("--j", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {}
    if getattr(args, "config", None):
        overrides = json.loads(Path(args.config).read_text())

    def pick(name, default=None):
        val = getattr(args, name, None)
        if val is None:
            val = overrides.get(name, default)
        return val

    p_list = pick("p_list")
    if isinstance(p_list, str):
        p_list = tuple(parse_p(x) for x in p_list.split(","))
    k_list = pick("k_list")
    if isinstance(k_list, str):
        k_list = tuple(int(x) for x in k_list.split(","))
    p = pick("p")
    cfg = RunConfig(
        command=args.command,
        lam=parse_lambda(str(pick("lam"))),
        n=pick("n"),
        n_grid=parse_grid(pick("grid")) if pick("grid") else (),
        p=parse_p(str(p)) if p is not None else None,
        p_list=p_list or (),
        kmax=pick("kmax"),
        k_list=k_list or (),
        alpha=parse_lambda(str(pick("alpha"))) if pick("alpha") else None,
        engine=pick("engine", "exact"),
        j=pick("j", 1),
        with_exact=bool(pick("with_exact", False)),
        output_dir=Path(pick("output_dir", ".")),
        emit_svg=bool(pick("emit_svg", False)),
    )
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (DomainError, ValueError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
