"""Command-line front end.

    evtail cvplot    --input losses.txt --transform stabilize --xi -0.5 --format svg --output cv.svg
    evtail fit       --input losses.txt --threshold 10
    evtail test      --input z.txt --m 20 --xi -0.5
    evtail select    --input losses.txt --transform neg-reciprocal --m 20
    evtail transform --input x.txt --transform stabilize --c 14 --format csv
    evtail simulate  --xi 0 --psi 1 --n 100 --seed 7

Exit status is 0 on success, 2 when a value lies outside an operation's
domain, and 1 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .errors import DataError, DomainError, EvtailError
from .gpd import GpdParams, gpd_mle_fit, gpd_sample
from .residual_cv import cv_plot, mean_excess_plot
from .sample import SampleData
from .svg import cv_plot_svg, mean_excess_svg
from .threshold_test import threshold_select, tm_test
from .transforms import StabilizeSpec, inverse_stabilize, negate_reciprocal, stabilize

COMMANDS = ("cvplot", "meplot", "fit", "test", "select", "transform", "simulate")
TRANSFORMS = ("none", "neg-reciprocal", "stabilize", "inverse-stabilize")
SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    column: Optional[str] = None
    m: int = 20
    ns: int = 8
    replicates: int = 10_000
    seed: int = 0
    alpha: float = 0.05
    level: float = 0.90
    xi: Optional[float] = None
    psi: float = 1.0
    n: Optional[int] = None
    c: Optional[float] = None
    threshold: Optional[float] = None
    transform: str = "none"
    quantile_method: str = "interpolated"
    inclusive: bool = True
    output_format: str = "json"
    output: Optional[str] = None
    x_axis: str = "removed"
    workers: int = 1
    timing: bool = False
    extra: dict = field(default_factory=dict)


def ingest(path, column=None) -> SampleData:
    """Read one value per line, or one CSV column when ``column`` is given.

    ``column`` is a header name, or a 0-based index for header-less CSV.
    Blank lines are skipped.
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc

    values = []

    def parse(token, lineno):
        token = token.strip()
        try:
            v = float(token)
        except ValueError:
            raise DataError(f"{path}: line {lineno}: cannot parse {token!r} as a number") from None
        if not math.isfinite(v):
            raise DataError(f"{path}: line {lineno}: non-finite value {token!r}")
        values.append(v)

    if column is None:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if line.strip():
                parse(line, lineno)
    else:
        rows = csv.reader(io.StringIO(text))
        if str(column).isdigit():
            idx = int(column)
        else:
            header = next(rows, None)
            if header is None:
                raise DataError(f"{path}: empty file")
            names = [h.strip() for h in header]
            if column not in names:
                raise DataError(f"{path}: no column named {column!r} (have {names})")
            idx = names.index(column)
        for row in rows:
            lineno = rows.line_num
            if not row or all(not f.strip() for f in row):
                continue
            if idx >= len(row):
                raise DataError(f"{path}: line {lineno}: missing column {column!r}")
            parse(row[idx], lineno)
    if not values:
        raise DataError(f"{path}: no data values")
    return SampleData(values)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def dumps(obj, indent=2, _level=0) -> str:
    """JSON with floats written to 17 significant digits; NaN/inf become null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj)) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_sample(cfg: RunConfig):
    if cfg.input_path is None:
        raise DataError(f"{cfg.command} needs --input")
    sample = ingest(cfg.input_path, cfg.column)
    if cfg.threshold is not None:
        above = sample.values[sample.values > cfg.threshold]
        if above.size == 0:
            raise DomainError(f"no observations exceed --threshold {cfg.threshold}")
        sample = SampleData(above - cfg.threshold)
    c_used = None
    if cfg.transform == "neg-reciprocal":
        sample = negate_reciprocal(sample)
    elif cfg.transform in ("stabilize", "inverse-stabilize"):
        if cfg.c is not None:
            spec = StabilizeSpec(cfg.c)
        elif cfg.transform == "stabilize":
            spec = StabilizeSpec.from_fit(sample)
        else:
            raise DomainError("inverse-stabilize needs --c")
        c_used = spec.c
        fn = stabilize if cfg.transform == "stabilize" else inverse_stabilize
        sample = fn(sample, spec)
    elif cfg.transform != "none":
        raise DomainError(f"unknown transform {cfg.transform!r}")
    return sample, c_used


def _plot_csv(points, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for p in points:
        w.writerow(["" if p[c] is None else (_fmt(p[c]) if isinstance(p[c], float) else p[c]) for c in columns])
    return buf.getvalue()


def _values_csv(values):
    return "value\n" + "".join(_fmt(float(v)) + "\n" for v in values)


def run(cfg: RunConfig) -> tuple[dict, str]:
    """Execute one command; return the report and the rendered output text."""
    if cfg.command not in COMMANDS:
        raise DomainError(f"unknown command {cfg.command!r}")
    if cfg.output_format == "svg" and cfg.command not in ("cvplot", "meplot"):
        raise DomainError("--format svg is only available for cvplot and meplot")
    start = time.perf_counter()
    result: dict = {}
    rendered = None

    if cfg.command == "simulate":
        if cfg.xi is None or cfg.n is None:
            raise DomainError("simulate needs --xi and --n")
        s = gpd_sample(GpdParams(cfg.xi, cfg.psi), cfg.n, cfg.seed)
        result = {"xi": cfg.xi, "psi": cfg.psi, "n": s.n, "values": s.values}
        if cfg.output_format == "csv":
            rendered = _values_csv(s.values)
    else:
        sample, c_used = _load_sample(cfg)
        if c_used is not None:
            result["c"] = c_used
        result["n"] = sample.n

        if cfg.command == "cvplot":
            plot = cv_plot(sample, cfg.ns, cfg.xi, cfg.level, cfg.inclusive)
            result.update(reference_cv=plot.reference_cv, level=plot.level, points=plot.points)
            for p, k in zip(result["points"], plot.removed):
                p["removed"] = int(k)
            if cfg.output_format == "svg":
                rendered = cv_plot_svg(plot, x_axis=cfg.x_axis)
            elif cfg.output_format == "csv":
                rendered = _plot_csv(result["points"], ["threshold", "removed", "n_exceed", "cv", "band_low", "band_high"])
        elif cfg.command == "meplot":
            plot = mean_excess_plot(sample, cfg.ns, cfg.inclusive)
            result["points"] = plot.points
            if cfg.output_format == "svg":
                rendered = mean_excess_svg(plot)
            elif cfg.output_format == "csv":
                rendered = _plot_csv(result["points"], ["threshold", "n_exceed", "mean_excess"])
        elif cfg.command == "fit":
            fit = gpd_mle_fit(sample)
            result.update(
                xi=fit.xi, psi=fit.psi, se_xi=fit.std_errors[0], se_psi=fit.std_errors[1],
                log_likelihood=fit.log_likelihood, converged=fit.converged,
            )
        elif cfg.command == "test":
            out = tm_test(sample, cfg.m, cfg.ns, cfg.xi, cfg.replicates, cfg.seed,
                          method=cfg.quantile_method, workers=cfg.workers)
            result.update(
                mode=out.mode, xi_null=out.xi_null, cv_tilde=out.cv_tilde, xi_tilde=out.xi_tilde,
                tm=out.tm, p_value=out.p_value, per_threshold_cv=list(out.per_threshold_cv),
                replicates=out.replicates, seed=out.seed,
            )
        elif cfg.command == "select":
            sel = threshold_select(sample, cfg.m, cfg.ns, cfg.alpha, cfg.replicates, cfg.seed, cfg.xi,
                                   method=cfg.quantile_method, workers=cfg.workers)
            result.update(
                p=sel.grid.p,
                steps=[{**st.__dict__, "step": st.step} for st in sel.steps],
                selected_step=None if sel.selected is None else sel.selected.step,
                final_xi=sel.final_xi,
            )
            # both transforms flip the sign of the tail index
            if cfg.transform in ("neg-reciprocal", "stabilize") and sel.final_xi is not None:
                result["tail_index"] = -sel.final_xi
        elif cfg.command == "transform":
            result["values"] = sample.values
            if cfg.output_format == "csv":
                rendered = _values_csv(sample.values)

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "version": __version__,
        "config": {k: v for k, v in cfg.__dict__.items() if k not in ("extra", "output")},
        "result": result,
    }
    if cfg.timing:
        report["duration_seconds"] = time.perf_counter() - start
    if rendered is None:
        if cfg.output_format == "csv":
            rendered = _plot_csv([_flat(result)], list(_flat(result)))
        else:
            rendered = dumps(report) + "\n"
    return report, rendered


def _flat(result):
    return {k: v for k, v in result.items() if not isinstance(v, (list, tuple, np.ndarray, dict))}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", help="data file (one value per line, or CSV with --column)")
    common.add_argument("--column", help="CSV column name or 0-based index")
    common.add_argument("--m", type=int, default=20, help="number of non-zero thresholds")
    common.add_argument("--ns", type=int, default=8, help="smallest tail size used for a CV")
    common.add_argument("--replicates", type=int, default=10_000)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default $EVTAIL_SEED or 0)")
    common.add_argument("--alpha", type=float, default=0.05)
    common.add_argument("--level", type=float, default=0.90, help="confidence level of CV-plot bands")
    common.add_argument("--xi", type=float, help="shape: simple null, band reference, or simulation shape")
    common.add_argument("--psi", type=float, default=1.0, help="scale for simulate")
    common.add_argument("--n", type=int, help="sample size for simulate")
    common.add_argument("--c", type=float, help="stabilizing constant (default psi/xi from an ML fit)")
    common.add_argument("--threshold", type=float, help="use excesses over this value (data units)")
    common.add_argument("--transform", choices=TRANSFORMS, default="none")
    common.add_argument("--quantile-method", choices=("interpolated", "lower"), default="interpolated")
    common.add_argument("--inclusive", action=argparse.BooleanOptionalAction, default=True,
                        help="count exceedances as x >= t (default) or x > t")
    common.add_argument("--format", dest="output_format", choices=("csv", "json", "svg"), default="json")
    common.add_argument("--output", help="output file (default stdout)")
    common.add_argument("--x-axis", choices=("removed", "threshold"), default="removed")
    common.add_argument("--workers", type=int, default=1, help="threads for Monte-Carlo replicates")
    common.add_argument("--timing", action="store_true", help="add wall-clock duration to the report")

    parser = argparse.ArgumentParser(prog="evtail", description=__doc__.split("\n")[0] or None)
    parser.add_argument("--version", action="version", version=f"evtail {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "cvplot": "residual CV plot with asymptotic bands",
        "meplot": "mean excess plot",
        "fit": "maximum-likelihood GPD fit",
        "test": "multiple-threshold test with simulated p-value",
        "select": "automatic threshold selection",
        "transform": "write the transformed sample",
        "simulate": "draw a GPD sample",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    seed = ns.seed
    if seed is None:
        env = os.environ.get("EVTAIL_SEED")
        seed = int(env) if env else 0
    return RunConfig(
        command=ns.command, input_path=ns.input_path, column=ns.column, m=ns.m, ns=ns.ns,
        replicates=ns.replicates, seed=seed, alpha=ns.alpha, level=ns.level, xi=ns.xi, psi=ns.psi,
        n=ns.n, c=ns.c, threshold=ns.threshold, transform=ns.transform,
        quantile_method=ns.quantile_method, inclusive=ns.inclusive, output_format=ns.output_format,
        output=ns.output, x_axis=ns.x_axis, workers=ns.workers, timing=ns.timing,
    )


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except ValueError as exc:
        print(f"evtail: error: {exc}", file=sys.stderr)
        return 2
    try:
        _, text = run(cfg)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except DomainError as exc:
        print(f"evtail: domain error: {exc}", file=sys.stderr)
        return 2
    except (DataError, OSError) as exc:
        print(f"evtail: {exc}", file=sys.stderr)
        return 1
    except EvtailError as exc:
        print(f"evtail: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
