"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 verification failure.

Config file (JSON)::

    {"K": 4, "t": 1, "N": 4,
     "alphas": ["1/2", "3/4", "1", "1"],      # or {"A": "1/2", ...}
     "demand": [1, 2, 3, 4],                  # optional, same keys/order as alphas
     "file_size_bytes": 1024,                 # optional (simulate)
     "seed": 7}                               # optional (simulate)
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from . import analysis, oracle
from .channel_sim import completion_time, simulate_delivery
from .combinat import as_rational, binom, fmt_decimal, fmt_rational
from .placement import FileStore, build_caches, subpacketize
from .scheduler import schedule_delivery
from .system_model import (CapacityProfile, ConfigError, SystemConfig, sort_capacities,
                           validate_config, validate_demand)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3
DEFAULT_SUBFILE_BYTES = 64


@dataclass
class RunConfig:
    cfg: SystemConfig
    profile: CapacityProfile
    demand: tuple[int, ...]          # indexed by rank
    file_size_bytes: Optional[int]
    seed: int
    raw_alphas: dict[Any, Fraction]  # original user id -> capacity, input order


def parse_run_config(data: dict) -> RunConfig:
    """Validates a decoded JSON config. Raises ConfigError on any violation."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("K", "t", "alphas"):
        if key not in data:
            raise ConfigError(f"config is missing {key!r}")
    K = data["K"]
    cfg = validate_config(SystemConfig(K, data["t"], data.get("N", K)))
    alphas = data["alphas"]
    if isinstance(alphas, list):
        users = list(range(1, len(alphas) + 1))
        values = alphas
    elif isinstance(alphas, dict):
        users, values = list(alphas), list(alphas.values())
    else:
        raise ConfigError("alphas must be a list or an object")
    try:
        raw = {u: as_rational(v) for u, v in zip(users, values)}
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad capacity value: {exc}") from exc
    profile = sort_capacities(raw, K=cfg.K)

    demand_in = data.get("demand")
    if demand_in is None:
        by_user = {u: i for i, u in enumerate(users, start=1)}
    elif isinstance(demand_in, dict):
        by_user = {u: demand_in.get(u, demand_in.get(str(u))) for u in users}
    elif isinstance(demand_in, list) and len(demand_in) == len(users):
        by_user = dict(zip(users, demand_in))
    else:
        raise ConfigError("demand must list one file per user")
    demand = validate_demand(cfg, [by_user[u] for u in profile.user_of_rank])

    size = data.get("file_size_bytes")
    if size is not None and (isinstance(size, bool) or not isinstance(size, int) or size < 0):
        raise ConfigError(f"file_size_bytes must be a nonnegative integer, got {size!r}")
    seed = data.get("seed", 0)
    return RunConfig(cfg, profile, demand, size, seed, raw)


def load_run_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_run_config(data)


def _emit_json(obj: dict, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _write_csv(header: list[str], rows: list[list[Any]], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_analyze(args, out) -> int:
    rc = load_run_config(args.config)
    sched = schedule_delivery(rc.cfg, rc.profile, rc.demand)
    rep = analysis.full_report(rc.cfg, rc.profile, sched.plan, completion_time(sched))
    _emit_json(rep.to_json(), out)
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    rc = load_run_config(args.config)
    cfg = rc.cfg
    size = args.file_size if args.file_size is not None else rc.file_size_bytes
    if size is None:
        size = DEFAULT_SUBFILE_BYTES * binom(cfg.K, cfg.t)
    seed = args.seed if args.seed is not None else rc.seed
    store = FileStore.random(cfg.N, size, seed)
    subfiles = subpacketize(store, cfg)  # raises IndivisibleFileLength (a ConfigError)
    caches = build_caches(cfg, subfiles)
    sched = schedule_delivery(cfg, rc.profile, rc.demand, subfiles)
    rep = simulate_delivery(sched, caches, rc.demand, store, rc.profile)
    body = rep.to_json()
    body["T_sc"] = fmt_rational(analysis.delay_superposition(cfg, rc.profile)[0])
    body["file_size_bytes"] = size
    body["seed"] = seed
    if args.schedule:
        body["schedule"] = sched.to_json()
    _emit_json(body, out)
    return EXIT_OK if rep.verified else EXIT_VERIFY


def _open_out(path: Optional[str], out):
    return open(path, "w", newline="") if path and path != "-" else None


def cmd_thresholds(args, out) -> int:
    cfg = validate_config(SystemConfig(args.K, args.t, args.K))
    table = analysis.thresholds(cfg)
    rows = [[k, fmt_rational(e), fmt_decimal(a)] for k, e, a in table.rows()]
    fh = _open_out(args.out, out)
    try:
        _write_csv(["k", "alpha_th_exact", "alpha_th_approx"], rows, fh or out)
    finally:
        if fh:
            fh.close()
    return EXIT_OK


def _sweep_values(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    if steps < 1:
        raise ConfigError("--steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def sweep_rows(rc: RunConfig, vary: str, lo: Fraction, hi: Fraction, steps: int) -> list[list[str]]:
    rows = []
    if vary == "t":
        if lo.denominator != 1 or hi.denominator != 1:
            raise ConfigError("t sweep needs integer endpoints")
        values = _sweep_values(lo, hi, steps)
        for v in values:
            if v.denominator != 1:
                raise ConfigError(f"t sweep step lands on non-integer {v}")
            cfg = validate_config(SystemConfig(rc.cfg.K, int(v), rc.cfg.N))
            rows.append(_sweep_row(str(int(v)), cfg, rc.profile))
        return rows
    if not vary.startswith("alpha_"):
        raise ConfigError(f"unknown sweep target {vary!r}")
    key = vary[len("alpha_"):]
    target = next((u for u in rc.raw_alphas if str(u) == key), None)
    if target is None:
        raise ConfigError(f"no user {key!r} in config")
    if not (0 < lo <= 1 and 0 < hi <= 1):
        raise ConfigError(f"capacity range [{lo}, {hi}] outside (0, 1]")
    for v in _sweep_values(lo, hi, steps):
        profile = sort_capacities({**rc.raw_alphas, target: v}, K=rc.cfg.K)
        rows.append(_sweep_row(fmt_rational(v), rc.cfg, profile))
    return rows


def _sweep_row(param: str, cfg: SystemConfig, profile: CapacityProfile) -> list[str]:
    rep = analysis.full_report(cfg, profile)
    gap = "undefined" if rep.gap_ratio is None else fmt_rational(rep.gap_ratio)
    return [param, fmt_rational(rep.T_mn), fmt_rational(rep.T_uc), fmt_rational(rep.T_sc),
            fmt_rational(rep.T_lb), gap]


def cmd_sweep(args, out) -> int:
    rc = load_run_config(args.config)
    try:
        lo, hi = as_rational(args.from_), as_rational(args.to)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad sweep range: {exc}") from exc
    rows = sweep_rows(rc, args.vary, lo, hi, args.steps)
    fh = _open_out(args.out, out)
    try:
        _write_csv(["param_value", "T_mn", "T_uc", "T_sc", "T_lb", "gap_ratio"], rows, fh or out)
    finally:
        if fh:
            fh.close()
    return EXIT_OK


def _closed_naive(cfg, profile):
    return analysis.delay_naive_grouped(cfg, profile)


def _closed_sc(cfg, profile):
    return analysis.delay_superposition(cfg, profile)[0]


# swapped out by the harness self-test
VERIFY_FORMULAS = {"naive": _closed_naive, "sc": _closed_sc}


def cmd_verify(args, out) -> int:
    if args.seeds < 1 or args.kmax < 2:
        raise ConfigError("--seeds must be >= 1 and --kmax >= 2")
    n, fail = oracle.run_trials(range(args.seeds), args.kmax,
                                VERIFY_FORMULAS["naive"], VERIFY_FORMULAS["sc"])
    if fail is None:
        out.write(f"verify: {n} trials, all checks agree\n")
        return EXIT_OK
    out.write(f"verify: FAILED at trial {n} (seed {fail.seed}) check {fail.check}: {fail.detail}\n")
    out.write(f"counterexample: K={fail.cfg.K} t={fail.cfg.t} "
              f"alphas={[fmt_rational(a) for a in fail.profile.alphas]}\n")
    return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supercache",
                                description="Superposition-coded caching over uneven-capacity broadcast links")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="closed-form delays for a config")
    a.add_argument("config")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="byte-level delivery and decoding")
    s.add_argument("config")
    s.add_argument("--file-size", type=int, default=None, help="bytes per library file")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--schedule", action="store_true", help="include the transmission schedule")
    s.set_defaults(func=cmd_simulate)

    th = sub.add_parser("thresholds", help="per-user capacity thresholds as CSV")
    th.add_argument("--K", type=int, required=True)
    th.add_argument("--t", type=int, required=True)
    th.add_argument("--out", default=None, help="CSV path (default stdout)")
    th.set_defaults(func=cmd_thresholds)

    sw = sub.add_parser("sweep", help="delays while one parameter varies, as CSV")
    sw.add_argument("config")
    sw.add_argument("--vary", required=True, help="alpha_<user id> or t")
    sw.add_argument("--from", dest="from_", required=True)
    sw.add_argument("--to", required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--out", default=None)
    sw.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="randomized oracle cross-checks")
    v.add_argument("--seeds", type=int, default=1000)
    v.add_argument("--kmax", type=int, default=10)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run_to_string(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
