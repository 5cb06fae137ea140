"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error (unreadable or
malformed input), 4 numerical error (singular design, explosive path,
infeasible selection, ...).

Options may also come from a config file of key = value lines (see
load_config); explicit flags win over the file, the file wins over
built-in defaults.  Every randomised command logs the seed it used to
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .benchmark import preset, preset_names, run_benchmark, write_rows_csv
from .estimation import FitReport, amar_fit
from .exceptions import AmarError, CsvParseError, DataGapError
from .forecast import hit_rate, rolling_mspe, rolling_predictions, rolling_rmspe
from .io import emit_plot_data, ingest_csv
from .models import (
    AmarModel,
    ArModel,
    InnovationSpec,
    amar_to_ar,
    ar_to_amar,
    is_stationary_exact,
    is_stationary_sufficient,
)
from .mvar import amvar_fit_given_scales, amvar_predict_next, union_scale_selection
from .simulate import simulate

USAGE_EXIT = 2
DATA_EXIT = 3
NUMERICAL_EXIT = 4


def load_config(path: str) -> dict[str, str]:
    """Parse a config file of `key = value` lines.

    Blank lines and lines starting with # are ignored; keys use the long
    option names without the leading dashes (e.g. `seed = 42`,
    `intervals = random:5000`).
    """
    options: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            options[key.strip().replace("-", "_")] = value.strip().strip('"')
    return options


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    path = args.config
    if path is None:
        if os.path.exists("amar.toml"):
            path = "amar.toml"
        else:
            return
    try:
        options = load_config(path)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except ValueError as exc:
        parser.error(str(exc))
    for key, value in options.items():
        if hasattr(args, key) and key in getattr(args, "_defaulted", set()):
            default = parser.get_default(key)
            if isinstance(default, bool):
                value = value.lower() in ("1", "true", "yes", "on")
            elif isinstance(default, int):
                value = int(value)
            elif isinstance(default, float):
                value = float(value)
            setattr(args, key, value)


def _load_model(path: str):
    """Model from JSON: either a model file or a saved fit report."""
    with open(path) as fh:
        d = json.load(fh)
    if "alpha" in d and "scales" in d:
        return FitReport.from_dict(d) if "sic_trace" in d else _pair(d)
    return AmarModel.from_json(json.dumps(d))


def _pair(d):
    return tuple(d["scales"]), tuple(d["alpha"])


def _parse_intervals(text: str):
    if text == "all" or text == "auto":
        return text, None
    if text.startswith("random"):
        m = 10000
        if ":" in text:
            m = int(text.split(":", 1)[1])
        return "random", m
    raise ValueError(f"bad --intervals value {text!r}; use all or random:M")


def _log_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _series_from_args(args) -> np.ndarray:
    x, meta = ingest_csv(args.data, column=args.column,
                         difference=args.difference, demean=args.demean)
    return x


def _cmd_simulate(args) -> int:
    if not args.model and not args.preset:
        raise ValueError("simulate needs --model or --preset")
    if args.model:
        model = _load_model(args.model)
        if isinstance(model, tuple):
            model = AmarModel(model[0], model[1])
    else:
        model = preset(args.preset, T=args.T)
    if isinstance(model, AmarModel):
        spec = model.innovation.with_seed(args.seed)
    else:
        spec = InnovationSpec(seed=args.seed)
    _log_seed(args.seed)
    x = simulate(model, args.T, burn_in=args.burn_in, innovation=spec,
                 allow_nonstationary=args.allow_nonstationary)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "csv":
            out.write("t,x\n")
            for t, v in enumerate(x, start=1):
                out.write(f"{t},{float(v)!r}\n")
        else:
            for v in x:
                out.write(f"{float(v)!r}\n")
    finally:
        if args.out:
            out.close()
    return 0


def _cmd_fit(args) -> int:
    x = _series_from_args(args)
    mode, m = _parse_intervals(args.intervals)
    if mode == "random":
        _log_seed(args.seed)
    p = "auto" if args.p == "auto" else int(args.p)
    zeta = "auto" if args.zeta == "auto" else float(args.zeta)
    report = amar_fit(x, p=p, zeta=zeta, q_max=args.qmax,
                      intervals=mode, m=m or 10000, seed=args.seed)
    print(f"observations : {len(x)}")
    print(f"order p      : {report.chosen_p}")
    print(f"threshold    : {report.chosen_zeta:.6g}")
    print(f"scales (q={report.q_hat})  : {list(report.scales)}")
    print(f"coefficients : {[round(a, 6) for a in report.alpha]}")
    print(f"resid var    : {report.residual_variance:.6g}")
    if report.scales:
        model = AmarModel(report.scales, report.alpha)
        suff = is_stationary_sufficient(model)
        exact = is_stationary_exact(report.beta_constrained)
        print(f"stationary   : exact-root test {exact} (sufficient test {suff})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
        print(f"report written to {args.json}")
    return 0


def _cmd_forecast(args) -> int:
    model = _load_model(args.model)
    x, meta = ingest_csv(args.data, column=args.column,
                         difference=args.difference, demean=args.demean)
    split = int(round(len(x) * (1.0 - args.test_fraction)))
    if split < 1 or split >= len(x):
        raise DataGapError("test fraction leaves no usable train/test split")
    history, test = x[:split], x[split:]
    mspe = rolling_mspe(model, test, history)
    print(f"train/test   : {len(history)}/{len(test)}")
    print(f"MSPE         : {mspe:.6g}")
    print(f"RMSPE        : {rolling_rmspe(model, test, history):.6g}")
    print(f"hit rate     : {hit_rate(model, test, history):.4f}")
    if args.emit:
        pred = rolling_predictions(model, test, history)
        actual = test
        if meta["demean"]:  # undo the transforms: emit on the original scale
            pred = pred + meta["mean"]
            actual = actual + meta["mean"]
        if meta["difference"]:
            raw, _ = ingest_csv(args.data, column=args.column)
            prev_level = raw[split : split + len(test)]
            pred = prev_level + pred
            actual = prev_level + actual
        with open(args.emit, "w") as fh:
            fh.write("t,actual,predicted\n")
            for i, (a, p_) in enumerate(zip(actual, pred), start=split + 1):
                fh.write(f"{i},{float(a)!r},{float(p_)!r}\n")
        print(f"predictions written to {args.emit}")
    return 0


def _cmd_amvar_fit(args) -> int:
    columns = args.columns.split(",") if args.columns else None
    series = []
    if columns is None:
        # every column except an optional leading t
        import csv as _csv

        with open(args.data, newline="") as fh:
            header = next(_csv.reader(fh))
        columns = [c for c in header if c != "t"]
    for col in columns:
        x, _ = ingest_csv(args.data, column=col, difference=args.difference,
                          demean=args.demean)
        series.append(x)
    X = np.column_stack(series)
    if args.scales == "auto":
        scales = union_scale_selection(X, q_max=args.qmax, seed=args.seed)
        print(f"union of per-series scales: {list(scales)}")
    else:
        scales = tuple(int(s) for s in args.scales.split(","))
    model, cov = amvar_fit_given_scales(X, scales)
    print(f"components   : {model.d} ({', '.join(columns)})")
    print(f"scales       : {list(model.scales)}")
    for k, mat in enumerate(model.coeff_mats):
        print(f"matrix tau={model.scales[k]}:")
        for row in mat:
            print("   " + "  ".join(f"{v: .5f}" for v in row))
    print("residual covariance:")
    for row in cov:
        print("   " + "  ".join(f"{v: .6f}" for v in row))
    nxt = amvar_predict_next(model, X)
    print(f"next-step prediction: {[round(float(v), 6) for v in nxt]}")
    if args.json:
        payload = {
            "scales": list(model.scales),
            "coeff_mats": [m_.tolist() for m_ in model.coeff_mats],
            "d": model.d,
            "residual_covariance": cov.tolist(),
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
        print(f"model written to {args.json}")
    return 0


def _cmd_bench(args) -> int:
    models = args.models.split(",")
    Ts = [int(t) for t in args.T.split(",")]
    workers = int(os.environ.get("AMAR_THREADS", "1"))
    _log_seed(args.seed)
    rows = run_benchmark(models, Ts, args.reps, seed=args.seed,
                         q_max=args.qmax, workers=workers)
    for row in rows:
        print(f"{row.model} T={row.T} reps={row.reps} failures={row.failures} "
              f"|q-q^|={row.q_err_mean:.4g}({row.q_err_se:.2g}) "
              f"D_H={row.dh_mean:.4g}({row.dh_se:.2g}) "
              f"|b-b^|^2={row.beta_sq_err_mean:.4g}({row.beta_sq_err_se:.2g}) "
              f"MSPE ratio-1={row.mspe_ratio_mean:.4g}({row.mspe_ratio_se:.2g})")
    if args.out:
        write_rows_csv(rows, args.out)
        print(f"table written to {args.out}")
    return 0


def _cmd_plotdata(args) -> int:
    if args.kind == "path":
        x = _series_from_args(args)
        emit_plot_data("path", x, args.out)
    elif args.kind == "coeffs":
        with open(args.model) as fh:
            report = FitReport.from_dict(json.load(fh))
        emit_plot_data("coeffs-with-scales", report, args.out)
    else:
        emit_plot_data("spectral", (args.alpha1, args.tau1, args.grid), args.out)
    print(f"written {args.out}")
    return 0


def _cmd_stationarity(args) -> int:
    with open(args.model) as fh:
        d = json.load(fh)
    if "coeffs" in d and "scales" in d:
        model = AmarModel.from_json(json.dumps(d))
        beta = amar_to_ar(model, model.max_scale)
    elif "alpha" in d:
        model = AmarModel(tuple(d["scales"]), tuple(d["alpha"]))
        beta = amar_to_ar(model, model.max_scale)
    else:
        beta = ArModel(tuple(d["beta"]))
        model = ar_to_amar(beta)
    print(f"scales              : {list(model.scales)}")
    print(f"coefficients        : {list(model.coeffs)}")
    print(f"sum |alpha| < 1     : {is_stationary_sufficient(model)} (sufficient test)")
    print(f"roots outside disc  : {is_stationary_exact(beta, margin=args.margin)} "
          f"(exact test, margin {args.margin})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amar",
        description="Adaptive multiscale autoregression toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_data(p):
        p.add_argument("--data", required=True, help="CSV file with the series")
        p.add_argument("--column", default="x", help="column name or index")
        p.add_argument("--difference", action="store_true", help="first-difference the series")
        p.add_argument("--demean", action="store_true", help="subtract the sample mean")

    def add_config(p):
        p.add_argument("--config", default=None, help="key=value config file (default ./amar.toml)")

    p = sub.add_parser("simulate", help="generate a sample path")
    p.add_argument("--model", help="model JSON file")
    p.add_argument("--preset", help=f"preset name ({', '.join(preset_names())})")
    p.add_argument("--T", type=int, required=True, help="observations to emit")
    p.add_argument("--burn-in", type=int, default=None, dest="burn_in")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("plain", "csv"), default="plain")
    p.add_argument("--allow-nonstationary", action="store_true", dest="allow_nonstationary")
    p.add_argument("--out", default=None)
    add_config(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fit", help="estimate scales and coefficients")
    add_common_data(p)
    p.add_argument("--p", default="auto", help="AR order: auto or an integer")
    p.add_argument("--zeta", default="auto", help="detection threshold: auto or a float")
    p.add_argument("--qmax", type=int, default=10)
    p.add_argument("--intervals", default="auto", help="all or random:M")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None, help="write the full report as JSON")
    add_config(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("forecast", help="rolling one-step evaluation")
    p.add_argument("--model", required=True, help="model JSON (fit report or model file)")
    add_common_data(p)
    p.add_argument("--test-fraction", type=float, default=0.3, dest="test_fraction")
    p.add_argument("--emit", default=None, help="write t,actual,predicted CSV")
    add_config(p)
    p.set_defaults(func=_cmd_forecast)

    p = sub.add_parser("amvar-fit", help="fit the vector model")
    p.add_argument("--data", required=True)
    p.add_argument("--columns", default=None, help="comma-separated component columns")
    p.add_argument("--difference", action="store_true")
    p.add_argument("--demean", action="store_true")
    p.add_argument("--scales", default="auto", help='auto or e.g. "1,10,11"')
    p.add_argument("--qmax", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None)
    add_config(p)
    p.set_defaults(func=_cmd_amvar_fit)

    p = sub.add_parser("bench", help="Monte Carlo benchmark table")
    p.add_argument("--models", required=True, help="comma-separated preset names")
    p.add_argument("--T", required=True, help="comma-separated sample sizes")
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--qmax", type=int, default=10)
    p.add_argument("--out", default=None, help="CSV output path")
    add_config(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("plotdata", help="emit tidy CSV for plotting")
    p.add_argument("--kind", choices=("path", "coeffs", "spectral"), required=True)
    p.add_argument("--data", help="CSV series (kind=path)")
    p.add_argument("--column", default="x")
    p.add_argument("--difference", action="store_true")
    p.add_argument("--demean", action="store_true")
    p.add_argument("--model", help="fit-report JSON (kind=coeffs)")
    p.add_argument("--alpha1", type=float, default=0.7, help="kind=spectral")
    p.add_argument("--tau1", type=int, default=10, help="kind=spectral")
    p.add_argument("--grid", type=int, default=512, help="frequency grid points")
    p.add_argument("--out", required=True)
    add_config(p)
    p.set_defaults(func=_cmd_plotdata)

    p = sub.add_parser("stationarity", help="stationarity tests for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--margin", type=float, default=0.0)
    add_config(p)
    p.set_defaults(func=_cmd_stationarity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # remember which options the user left at their defaults, so the
    # config file only fills those
    supplied = {a.lstrip("-").replace("-", "_").split("=")[0]
                for a in (argv if argv is not None else sys.argv[1:])
                if a.startswith("--")}
    args._defaulted = {k for k in vars(args) if k not in supplied}
    _apply_config(args, parser)
    try:
        return args.func(args)
    except (CsvParseError, DataGapError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"data error: malformed model or data file ({exc})", file=sys.stderr)
        return DATA_EXIT
    except AmarError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT
    except ValueError as exc:
        parser.error(str(exc))  # exits with code 2


if __name__ == "__main__":
    sys.exit(main())
