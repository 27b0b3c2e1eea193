"""Command-line pipeline: ingestion -> series -> fit -> forecast -> reports.

Each subcommand emits one plot-ready artifact; ``pipeline`` runs the whole
chain and writes, per series: ``<name>.forecast.csv``, ``<name>.report.json``,
``<name>.model.json`` and ``<name>.doubling.json``, plus ``run.log.json``.
All files are written atomically (temp + rename).  Errors leave a
single-line JSON object on stderr and exit status 1; a run where some
series were skipped exits 2.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import tempfile

import numpy as np
import scipy

from . import __version__
from ._kernels import BACKEND
from .arima import ArimaCoefficients, ArimaOrder, select_order
from .arima.forecast import forecast as make_forecast
from .errors import InvalidHorizon, PubGrowthError
from .growth import DEFAULT_OFFSETS, doubling_date, horizon_report, linear_fit
from .ingest import STANDARD_SPECS, build_series, parse_records
from .series import CUMULATIVE, DailySeries, convert
from .simulate import RNG_ALGORITHM, SimulationSpec, rolling_backtest, simulate_arima

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2


@dataclasses.dataclass
class PipelineConfig:
    input_path: str = ""
    series: str = "all"
    horizon_days: int = 365
    level: float = 0.95
    offsets: tuple = DEFAULT_OFFSETS
    fit_scale: str = CUMULATIVE
    p_max: int = 5
    q_max: int = 5
    d_max: int = 2
    seed: int = 0
    output_dir: str = "out"

    def __post_init__(self):
        if not 0.5 < self.level < 1.0:
            raise PubGrowthError(f"interval level must be in (0.5, 1), got {self.level}")
        if self.offsets and self.horizon_days < max(self.offsets):
            raise InvalidHorizon("horizon must cover the largest report offset")

    def to_json_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["offsets"] = list(self.offsets)
        return d


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: str, payload: dict) -> None:
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")


def _forecast_csv(fc) -> str:
    lines = ["date,point,lower,upper,point_clamped,lower_clamped"]
    anchor = fc.anchor_value
    for lead in range(1, fc.horizon + 1):
        point = fc.point[lead - 1]
        lower = fc.lower[lead - 1]
        upper = fc.upper[lead - 1]
        lines.append(
            f"{fc.date_at(lead).isoformat()},{point:.6f},{lower:.6f},{upper:.6f},"
            f"{max(point, anchor):.6f},{max(lower, anchor):.6f}"
        )
    return "\n".join(lines) + "\n"


def _load_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PubGrowthError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


_INT_KEYS = {"horizon_days", "p_max", "q_max", "d_max", "seed"}


def _build_config(args) -> PipelineConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        raw.update(_load_config_file(args.config))
    for key in dataclasses.fields(PipelineConfig):
        flag = getattr(args, key.name, None)
        if flag is not None:
            raw[key.name] = flag
    if "offsets" in raw and isinstance(raw["offsets"], str):
        raw["offsets"] = tuple(int(x) for x in raw["offsets"].split(",") if x.strip())
    for key in _INT_KEYS & raw.keys():
        raw[key] = int(raw[key])
    if "level" in raw:
        raw["level"] = float(raw["level"])
    return PipelineConfig(**raw)


def _parse_input(path: str):
    if not os.path.exists(path):
        raise PubGrowthError(f"input file not found: {path}")
    with open(path, "rb") as handle:
        return parse_records(handle)


def _selected_specs(selector: str):
    if selector in ("all", "standard", ""):
        return list(STANDARD_SPECS)
    wanted = [token.strip().lower() for token in selector.split(",") if token.strip()]
    by_name = {spec.name: spec for spec in STANDARD_SPECS}
    unknown = [name for name in wanted if name not in by_name]
    if unknown:
        raise PubGrowthError(f"unknown series: {', '.join(unknown)}")
    return [by_name[name] for name in wanted]


def _fit_and_forecast(daily: DailySeries, config: PipelineConfig):
    """Fit one series on the configured scale and forecast the horizon."""
    cumulative = convert(daily, CUMULATIVE)
    if config.fit_scale == CUMULATIVE:
        fit = select_order(
            cumulative, p_max=config.p_max, q_max=config.q_max, d_max=config.d_max
        )
        fc = make_forecast(fit, config.horizon_days, config.level)
    else:
        fit = select_order(
            daily, p_max=config.p_max, q_max=config.q_max, d_max=config.d_max
        )
        fc = make_forecast(
            fit,
            config.horizon_days,
            config.level,
            accumulate_from=float(cumulative.values[-1]),
        )
    return fit, fc, cumulative


def _series_artifacts(name: str, daily, config: PipelineConfig) -> dict:
    fit, fc, cumulative = _fit_and_forecast(daily, config)
    start_count = float(cumulative.values[-1])
    report = horizon_report(fc, name, start_count, config.offsets)
    doubling = doubling_date(fc, start_count)
    trend = linear_fit(cumulative)
    out = config.output_dir
    _atomic_write(os.path.join(out, f"{name}.forecast.csv"), _forecast_csv(fc))
    _write_json(os.path.join(out, f"{name}.report.json"), report.to_json_dict())
    _write_json(os.path.join(out, f"{name}.model.json"), fit.to_json_dict())
    _write_json(
        os.path.join(out, f"{name}.doubling.json"),
        {
            "series": name,
            "start_count": doubling.start_count,
            "target_factor": doubling.target_factor,
            "point_date": doubling.point_date.isoformat() if doubling.point_date else None,
            "upper_date": doubling.upper_date.isoformat() if doubling.upper_date else None,
        },
    )
    return {
        "order": fit.order.label(),
        "aicc": fit.aicc,
        "loglik": fit.loglik,
        "sigma2": fit.coefficients.sigma2,
        "degenerate": fit.degenerate,
        "css_fallback": fit.css_fallback,
        "linear_fit_r2": trend.r2,
        "observations": len(daily),
        "total": start_count,
    }


def cmd_pipeline(args) -> int:
    config = _build_config(args)
    records, reject_report = _parse_input(config.input_path)
    os.makedirs(config.output_dir, exist_ok=True)
    diagnostics: dict[str, dict] = {}
    skipped: dict[str, str] = {}
    for spec in _selected_specs(config.series):
        try:
            daily = build_series(records, spec)
            diagnostics[spec.name] = _series_artifacts(spec.name, daily, config)
        except PubGrowthError as exc:
            skipped[spec.name] = f"{exc.code}: {exc}"
    _write_json(
        os.path.join(config.output_dir, "run.log.json"),
        {
            "versions": {
                "pubgrowth": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "kernel_backend": BACKEND,
                "rng": RNG_ALGORITHM,
            },
            "config": config.to_json_dict(),
            "reject_report": reject_report.to_json_dict(),
            "series": diagnostics,
            "skipped": skipped,
        },
    )
    if not diagnostics:
        raise PubGrowthError("every requested series was skipped")
    return EXIT_PARTIAL if skipped else EXIT_OK


def cmd_ingest(args) -> int:
    _, report = _parse_input(args.input)
    payload = json.dumps(report.to_json_dict(), indent=2)
    if args.output:
        _atomic_write(args.output, payload + "\n")
    else:
        print(payload)
    return EXIT_OK


def cmd_series(args) -> int:
    config = _build_config(args)
    records, _ = _parse_input(config.input_path)
    os.makedirs(config.output_dir, exist_ok=True)
    exit_code = EXIT_OK
    for spec in _selected_specs(config.series):
        try:
            daily = build_series(records, spec)
        except PubGrowthError:
            exit_code = EXIT_PARTIAL
            continue
        cumulative = convert(daily, CUMULATIVE)
        lines = ["date,daily,cumulative"]
        for i in range(len(daily)):
            lines.append(
                f"{daily.date_at(i).isoformat()},{daily.values[i]:.6f},{cumulative.values[i]:.6f}"
            )
        _atomic_write(
            os.path.join(config.output_dir, f"{spec.name}.series.csv"),
            "\n".join(lines) + "\n",
        )
    return exit_code


def _single_series(args):
    config = _build_config(args)
    records, _ = _parse_input(config.input_path)
    specs = _selected_specs(config.series)
    if len(specs) != 1:
        raise PubGrowthError("this subcommand needs exactly one series (--series <name>)")
    spec = specs[0]
    return config, spec.name, build_series(records, spec)


def cmd_fit(args) -> int:
    config, name, daily = _single_series(args)
    fit, _, _ = _fit_and_forecast(daily, config)
    os.makedirs(config.output_dir, exist_ok=True)
    _write_json(os.path.join(config.output_dir, f"{name}.model.json"), fit.to_json_dict())
    return EXIT_OK


def cmd_forecast(args) -> int:
    config, name, daily = _single_series(args)
    _, fc, _ = _fit_and_forecast(daily, config)
    os.makedirs(config.output_dir, exist_ok=True)
    _atomic_write(os.path.join(config.output_dir, f"{name}.forecast.csv"), _forecast_csv(fc))
    return EXIT_OK


def cmd_report(args) -> int:
    config, name, daily = _single_series(args)
    os.makedirs(config.output_dir, exist_ok=True)
    _series_artifacts(name, daily, config)
    return EXIT_OK


def cmd_simulate(args) -> int:
    coef = ArimaCoefficients(
        phi=[float(x) for x in args.phi.split(",") if x.strip()] if args.phi else [],
        theta=[float(x) for x in args.theta.split(",") if x.strip()] if args.theta else [],
        constant=args.constant,
        sigma2=args.sigma2,
    )
    order = ArimaOrder(len(coef.phi), args.d, len(coef.theta), with_constant=args.constant != 0)
    spec = SimulationSpec(order, coef, args.n, args.seed, args.burn_in)
    series = simulate_arima(spec)
    lines = ["date,value"]
    for i in range(len(series)):
        lines.append(f"{series.date_at(i).isoformat()},{series.values[i]:.6f}")
    _atomic_write(args.output, "\n".join(lines) + "\n")
    _write_json(
        args.output + ".meta.json",
        {
            "rng": RNG_ALGORITHM,
            "seed": args.seed,
            "burn_in": args.burn_in,
            "order": {"p": order.p, "d": order.d, "q": order.q},
        },
    )
    return EXIT_OK


def cmd_backtest(args) -> int:
    config, name, daily = _single_series(args)
    series = convert(daily, CUMULATIVE) if config.fit_scale == CUMULATIVE else daily
    report = rolling_backtest(
        series,
        initial_window=args.initial_window,
        step=args.step,
        h=args.backtest_horizon,
        level=config.level,
        p_max=config.p_max,
        q_max=config.q_max,
    )
    os.makedirs(config.output_dir, exist_ok=True)
    _write_json(os.path.join(config.output_dir, f"{name}.backtest.json"), report.to_json_dict())
    return EXIT_OK


def _add_config_flags(parser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--input", dest="input_path", help="record export CSV")
    parser.add_argument("--series", help="comma-separated series names, or 'all'")
    parser.add_argument("--horizon-days", dest="horizon_days", type=int)
    parser.add_argument("--level", type=float)
    parser.add_argument("--offsets", help="comma-separated day offsets for reports")
    parser.add_argument("--fit-scale", dest="fit_scale", choices=["cumulative", "increments"])
    parser.add_argument("--p-max", dest="p_max", type=int)
    parser.add_argument("--q-max", dest="q_max", type=int)
    parser.add_argument("--d-max", dest="d_max", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--output-dir", dest="output_dir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pubgrowth",
        description="Daily publication-count series, ARIMA fitting, and growth forecasting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate an export and print the reject report")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_ingest)

    for name, func, help_text in [
        ("series", cmd_series, "emit daily/cumulative CSV per series"),
        ("fit", cmd_fit, "fit one series and write its model JSON"),
        ("forecast", cmd_forecast, "fit one series and write its forecast CSV"),
        ("report", cmd_report, "fit one series and write all its report artifacts"),
        ("pipeline", cmd_pipeline, "run the full end-to-end pipeline"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_config_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="generate a seeded ARIMA sample path")
    p.add_argument("--phi", default="")
    p.add_argument("--theta", default="")
    p.add_argument("--constant", type=float, default=0.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=200)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("backtest", help="rolling-origin backtest of one series")
    _add_config_flags(p)
    p.add_argument("--initial-window", dest="initial_window", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--backtest-horizon", dest="backtest_horizon", type=int, default=30)
    p.set_defaults(func=cmd_backtest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PubGrowthError as exc:
        print(json.dumps({"error": exc.code, "detail": str(exc)}), file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
