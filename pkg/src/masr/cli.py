"""Command-line front end: config ingestion, dispatch, CSV/JSON emission.

This is the only module with side effects. Output is deterministic and
byte-identical for identical (config, seed): floats are written with
their shortest round-trip decimal form and rows are emitted in a fixed
order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields

from .beamforming import mrt_beamformer, primary_rate_approx, primary_rate_exact, secondary_rate
from .experiments import beam_pattern_sweep, position_table, rate_region, rate_vs_power_sweep
from .placement import fpa_positions, optimal_ma_positions, search_oracle
from .scene import DegenerateGeometryError, Scene, dbm_to_watt

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3
EXIT_VERIFY = 4


class ConfigError(ValueError):
    """Invalid or unreadable run configuration."""


@dataclass
class RunConfig:
    """Resolved run settings. Angles are stored in radians."""

    theta_p: float = math.pi / 3.0
    theta_b: float = 3.0 * math.pi / 4.0
    d_p_m: float = 40.0
    d_b_m: float = 20.0 * math.sqrt(3.0)
    wavelength_m: float = 0.5
    num_antennas: int = 4
    spread_factor: int = 15
    noise_dbm: float = -80.0
    power_dbm: float = 30.0
    power_w: float | None = None  # optional override; covers the 0 W case
    scheme: str = "ma"
    pattern_samples: int = 2048
    frontier_samples: int = 256
    sweep_start_dbm: float = 20.0
    sweep_stop_dbm: float = 40.0
    sweep_step_db: float = 0.25
    oracle_budget: int = 2000
    seed: int = 7
    position_rows: tuple[tuple[float, float], ...] = (
        (math.pi / 3.0, math.pi / 2.0),
        (math.pi / 3.0, 3.0 * math.pi / 4.0),
        (math.pi / 3.0, 8.0 * math.pi / 9.0),
    )
    out: str | None = None
    format: str = "csv"

    def scene(self) -> Scene:
        power = self.power_w if self.power_w is not None else dbm_to_watt(self.power_dbm)
        return Scene(
            wavelength_m=self.wavelength_m,
            num_antennas=self.num_antennas,
            theta_p=self.theta_p,
            theta_b=self.theta_b,
            d_p_m=self.d_p_m,
            d_b_m=self.d_b_m,
            transmit_power_w=power,
            noise_power_w=dbm_to_watt(self.noise_dbm),
            spread_factor=self.spread_factor,
        )


# Config-file keys that hold angles; values are multiples of pi unless the
# file sets angle_unit to "rad".
_ANGLE_KEYS = ("theta_p", "theta_b")
_KNOWN_KEYS = {f.name for f in fields(RunConfig)} | {"angle_unit"}


def load_config(path: str | None, overrides: dict) -> RunConfig:
    """Merge defaults, an optional JSON file, and CLI overrides."""
    raw: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
    for key in raw:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key: {key!r}")

    unit = raw.get("angle_unit", "pi")
    if unit not in ("pi", "rad"):
        raise ConfigError("config field 'angle_unit': must be 'pi' or 'rad'")
    scale = math.pi if unit == "pi" else 1.0

    cfg = RunConfig()
    for key in _ANGLE_KEYS:
        if key in raw:
            setattr(cfg, key, _as_number(key, raw[key]) * scale)
    if "position_rows" in raw:
        cfg.position_rows = _as_angle_rows(raw["position_rows"], scale)
    for key, value in raw.items():
        if key in _ANGLE_KEYS or key in ("angle_unit", "position_rows"):
            continue
        setattr(cfg, key, value)
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    _validate(cfg)
    return cfg


def _as_number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"config field {name!r}: must be a finite number, got {value!r}")
    return float(value)


def _as_angle_rows(value, scale: float) -> tuple[tuple[float, float], ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError("config field 'position_rows': must be a nonempty list of pairs")
    rows = []
    for i, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 2:
            raise ConfigError(f"config field 'position_rows'[{i}]: must be a [theta_p, theta_b] pair")
        rows.append(
            (
                _as_number(f"position_rows[{i}][0]", item[0]) * scale,
                _as_number(f"position_rows[{i}][1]", item[1]) * scale,
            )
        )
    return tuple(rows)


def _validate(cfg: RunConfig) -> None:
    for name in ("d_p_m", "d_b_m", "wavelength_m", "sweep_step_db"):
        v = getattr(cfg, name)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not (math.isfinite(v) and v > 0):
            raise ConfigError(f"config field {name!r}: must be a positive number, got {v!r}")
    for name in ("theta_p", "theta_b", "noise_dbm", "power_dbm", "sweep_start_dbm", "sweep_stop_dbm"):
        _as_number(name, getattr(cfg, name))
    for name in ("num_antennas", "spread_factor", "pattern_samples", "frontier_samples", "oracle_budget", "seed"):
        v = getattr(cfg, name)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"config field {name!r}: must be an integer, got {v!r}")
    if cfg.num_antennas < 1 or cfg.spread_factor < 1:
        raise ConfigError("config fields 'num_antennas' and 'spread_factor' must be >= 1")
    if cfg.pattern_samples < 2 or cfg.frontier_samples < 2:
        raise ConfigError("config fields 'pattern_samples' and 'frontier_samples' must be >= 2")
    if cfg.oracle_budget < 1:
        raise ConfigError("config field 'oracle_budget': must be >= 1")
    if cfg.power_w is not None:
        v = cfg.power_w
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not (math.isfinite(v) and v >= 0):
            raise ConfigError(f"config field 'power_w': must be a number >= 0, got {v!r}")
    if cfg.scheme not in ("ma", "fpa"):
        raise ConfigError(f"config field 'scheme': must be 'ma' or 'fpa', got {cfg.scheme!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"config field 'format': must be 'csv' or 'json', got {cfg.format!r}")
    if cfg.sweep_stop_dbm < cfg.sweep_start_dbm:
        raise ConfigError("config field 'sweep_stop_dbm': must be >= sweep_start_dbm")
    if cfg.out is not None and not isinstance(cfg.out, str):
        raise ConfigError(f"config field 'out': must be a string path, got {cfg.out!r}")


def _emit(rows: list[dict], fieldnames: list[str], cfg: RunConfig) -> None:
    """Write rows as CSV or JSON to cfg.out (or stdout), LF line endings."""
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_fmt(row[name]) for name in fieldnames])
        text = buf.getvalue()
    else:
        text = json.dumps([{name: row[name] for name in fieldnames} for row in rows]) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fmt(value) -> str:
    # repr() of a float is its shortest round-trip decimal form
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _scheme_positions(cfg: RunConfig, scene):
    return optimal_ma_positions(scene).positions if cfg.scheme == "ma" else fpa_positions(scene)


def cmd_positions(cfg: RunConfig) -> int:
    rows = position_table(list(cfg.position_rows), cfg.num_antennas)
    names = ["delta"] + [f"x{i}_lambda" for i in range(1, cfg.num_antennas + 1)]
    _emit(rows, names, cfg)
    return EXIT_OK


def cmd_pattern(cfg: RunConfig) -> int:
    scene = cfg.scene()
    xs = _scheme_positions(cfg, scene)
    pattern = beam_pattern_sweep(scene, xs, cfg.pattern_samples, scheme_tag=cfg.scheme)
    rows = [
        {"theta_rad": theta, "gain": gain, "scheme": pattern.scheme_tag}
        for theta, gain in pattern.samples
    ]
    _emit(rows, ["theta_rad", "gain", "scheme"], cfg)
    return EXIT_OK


def cmd_rates(cfg: RunConfig) -> int:
    scene = cfg.scene()
    xs = _scheme_positions(cfg, scene)
    w = mrt_beamformer(xs, scene)
    rows = [
        {
            "r_p_approx": primary_rate_approx(scene, xs, w),
            "r_p_exact": primary_rate_exact(scene, xs, w),
            "r_c": secondary_rate(scene, xs, w),
        }
    ]
    _emit(rows, ["r_p_approx", "r_p_exact", "r_c"], cfg)
    return EXIT_OK


def cmd_region(cfg: RunConfig) -> int:
    region = rate_region(cfg.scene(), cfg.frontier_samples)
    rows = [
        {"r_p": p.primary_rate_bpshz, "r_c": p.secondary_rate_bpshz, "label": "fpa_frontier"}
        for p in region.fpa_frontier
    ]
    rows.append(
        {
            "r_p": region.ma_corner.primary_rate_bpshz,
            "r_c": region.ma_corner.secondary_rate_bpshz,
            "label": "ma_corner",
        }
    )
    rows.append(
        {
            "r_p": region.bounds.primary_rate_bpshz,
            "r_c": region.bounds.secondary_rate_bpshz,
            "label": "bound",
        }
    )
    _emit(rows, ["r_p", "r_c", "label"], cfg)
    return EXIT_OK


def cmd_sweep_power(cfg: RunConfig) -> int:
    steps = int(round((cfg.sweep_stop_dbm - cfg.sweep_start_dbm) / cfg.sweep_step_db))
    grid = [cfg.sweep_start_dbm + k * cfg.sweep_step_db for k in range(steps + 1)]
    rows = rate_vs_power_sweep(cfg.scene(), grid)
    _emit(rows, ["p_dbm", "scheme", "r_c"], cfg)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    """Closed-form positions versus the independent search, per angle pair."""
    rows = []
    failed = False
    for theta_p, theta_b in cfg.position_rows:
        scene = Scene(
            wavelength_m=cfg.wavelength_m,
            num_antennas=cfg.num_antennas,
            theta_p=theta_p,
            theta_b=theta_b,
            d_p_m=cfg.d_p_m,
            d_b_m=cfg.d_b_m,
            transmit_power_w=cfg.power_w if cfg.power_w is not None else dbm_to_watt(cfg.power_dbm),
            noise_power_w=dbm_to_watt(cfg.noise_dbm),
            spread_factor=cfg.spread_factor,
        )
        closed = optimal_ma_positions(scene)
        oracle = search_oracle(scene, cfg.oracle_budget, cfg.seed)
        gap = closed.achieved_gain - oracle.achieved_gain
        if gap > 0.01 * cfg.num_antennas:
            failed = True
        rows.append(
            {
                "delta": scene.delta,
                "closed_form_gain": closed.achieved_gain,
                "oracle_gain": oracle.achieved_gain,
                "gap": gap,
            }
        )
    _emit(rows, ["delta", "closed_form_gain", "oracle_gain", "gap"], cfg)
    return EXIT_VERIFY if failed else EXIT_OK


_COMMANDS = {
    "positions": cmd_positions,
    "pattern": cmd_pattern,
    "rates": cmd_rates,
    "region": cmd_region,
    "sweep-power": cmd_sweep_power,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a flat JSON config file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--seed", type=int, help="seed for the search oracle")
    parser = argparse.ArgumentParser(
        prog="masr",
        description="Movable-antenna backscatter link calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("positions", parents=[common], help="optimal-position table")
    sub.add_parser("pattern", parents=[common], help="beam gain versus angle")
    sub.add_parser("rates", parents=[common], help="rates at one operating point")
    sub.add_parser("region", parents=[common], help="achievable rate region")
    sub.add_parser("sweep-power", parents=[common], help="secondary rate versus power")
    sub.add_parser("verify", parents=[common], help="search-oracle cross check")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {"out": args.out, "format": args.format, "seed": args.seed}
    try:
        cfg = load_config(args.config, overrides)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateGeometryError as exc:
        print(f"error: degenerate geometry: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
