"""Command-line front end: one deterministic experiment per invocation.

Configuration comes from ``key = value`` text files plus repeatable
``--set key=value`` overrides; every command writes CSV (default) or a
single JSON object, byte-identically for identical arguments.

Exit codes: 0 success/PASS, 2 configuration error, 3 infeasible strategy,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import analytics, maxcorr, mcsim, verifier
from .errors import (
    ConfigError,
    InfeasiblePower,
    SensorJamError,
)
from .model import (
    CoordinatedNoise,
    DeterministicLinear,
    FixedLinear,
    IndependentNoise,
    LinearPlusNoise,
    MMSEFromStats,
    NetworkConfig,
    RandomizedSign,
    StrategyProfile,
    validate_config,
)

_NETWORK_KEYS = ("M", "K", "var_S", "var_WT", "var_WA", "var_Z", "P_T", "P_A")

_KEY_TYPES: dict[str, type] = {
    "M": int,
    "K": int,
    "var_S": float,
    "var_WT": float,
    "var_WA": float,
    "var_Z": float,
    "P_T": float,
    "P_A": float,
    "n": int,
    "seed": int,
    "workers": int,
    "grid_min": float,
    "grid_max": float,
    "grid_points": int,
    "setting": int,
    "tolerance": float,
    "units": str,
    "format": str,
    "out": str,
    "profile": str,
    "sweep": str,
    "jam_gain": float,
    "D_rd": float,
    "R": float,
    "rho": float,
    "bins": int,
    "half_width": float,
    "tx_kind": str,
    "tx_gain": float,
    "tx_p": float,
    "adv_kind": str,
    "adv_gain": float,
    "adv_variance": float,
    "adv_coord": bool,
    "rx_kind": str,
    "rx_gain": float,
    "knows_sign": bool,
}

_COMMON_KEYS = ("out", "format", "units", "seed", "n", "workers")

_COMMAND_KEYS: dict[str, tuple[str, ...]] = {
    "analytic": _NETWORK_KEYS + _COMMON_KEYS,
    "simulate": _NETWORK_KEYS
    + _COMMON_KEYS
    + (
        "profile",
        "tx_kind",
        "tx_gain",
        "tx_p",
        "adv_kind",
        "adv_gain",
        "adv_variance",
        "adv_coord",
        "rx_kind",
        "rx_gain",
        "knows_sign",
    ),
    "sweep": _NETWORK_KEYS
    + _COMMON_KEYS
    + ("sweep", "grid_min", "grid_max", "grid_points", "jam_gain"),
    "verify-saddle": _NETWORK_KEYS + _COMMON_KEYS + ("setting", "tolerance", "grid_points"),
    "ceo": _NETWORK_KEYS + _COMMON_KEYS + ("D_rd", "R"),
    "maxcorr": _NETWORK_KEYS + _COMMON_KEYS + ("rho", "bins", "half_width"),
    "separation": _NETWORK_KEYS + _COMMON_KEYS + ("setting",),
}

_DEFAULTS: dict[str, object] = {
    "M": 2,
    "K": 1,
    "var_S": 1.0,
    "var_WT": 1.0,
    "var_WA": 1.0,
    "var_Z": 1.0,
    "P_T": 1.0,
    "P_A": 1.0,
    "n": 100_000,
    "seed": 1,
    "format": "csv",
    "units": "nats",
    "profile": "thm1",
    "sweep": "adversary2",
    "grid_points": 41,
    "setting": 1,
    "tolerance": 1e-9,
    "jam_gain": 0.0,
    "rho": 0.8,
    "bins": 64,
    "half_width": 4.0,
    "tx_p": 0.5,
    "adv_coord": True,
    "knows_sign": True,
}

# Per-command overrides of the shared defaults; sweeps are analytic-only
# unless a Monte Carlo sample count is requested explicitly.
_COMMAND_DEFAULTS: dict[str, dict[str, object]] = {"sweep": {"n": 0}}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _coerce(key: str, raw: str):
    if key not in _KEY_TYPES:
        raise ConfigError(key, "unknown configuration key")
    typ = _KEY_TYPES[key]
    try:
        if typ is bool:
            low = raw.strip().lower()
            if low in ("true", "1", "yes"):
                return True
            if low in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if typ is int:
            return int(raw.strip())
        if typ is float:
            return float(raw.strip())
        return raw.strip()
    except ValueError as exc:
        raise ConfigError(key, f"cannot parse {raw!r} as {typ.__name__}") from exc


def _read_config_file(path: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError("config", f"{path}:{lineno}: expected key = value")
                key, value = line.split("=", 1)
                pairs[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    return pairs


def _resolve(command: str, args: argparse.Namespace) -> dict[str, object]:
    allowed = _COMMAND_KEYS[command]
    params = {k: _DEFAULTS[k] for k in allowed if k in _DEFAULTS}
    params.update(_COMMAND_DEFAULTS.get(command, {}))
    raw: dict[str, str] = {}
    if args.config:
        raw.update(_read_config_file(args.config))
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError("set", f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        raw[key.strip()] = value.strip()
    for key, value in raw.items():
        if key not in allowed:
            raise ConfigError(key, f"not a valid key for command {command!r}")
        params[key] = _coerce(key, value)
    # dedicated flags win over file and --set
    for flag in ("out", "format", "units", "seed", "n"):
        value = getattr(args, flag.replace("-", "_"), None)
        if value is not None:
            params[flag] = value
    if params.get("format") not in (None, "csv", "json"):
        raise ConfigError("format", f"must be csv or json, got {params['format']!r}")
    if params.get("units") not in (None, "nats", "bits"):
        raise ConfigError("units", f"must be bits or nats, got {params['units']!r}")
    return params


def _network(params: dict[str, object]) -> NetworkConfig:
    cfg = NetworkConfig(
        m=params["M"],
        k=params["K"],
        var_s=params["var_S"],
        var_wt=params["var_WT"],
        var_wa=params["var_WA"],
        var_z=params["var_Z"],
        p_t=params["P_T"],
        p_a=params["P_A"],
    )
    validate_config(cfg)
    return cfg


def _profile_from_params(cfg: NetworkConfig, params: dict[str, object]) -> tuple[str, StrategyProfile]:
    name = params.get("profile", "thm1")
    if name == "thm1":
        return name, analytics.theorem1_profile(cfg)
    if name == "thm1-uncoord":
        return name, analytics.theorem1_uncoordinated_profile(cfg)
    if name == "thm2":
        return name, analytics.theorem2_profile(cfg)
    if name != "custom":
        raise ConfigError("profile", f"must be thm1 | thm1-uncoord | thm2 | custom, got {name!r}")

    tx_kind = params.get("tx_kind", "randsign")
    if tx_kind == "linear":
        tx = DeterministicLinear(gain=params.get("tx_gain", 0.0))
    elif tx_kind == "randsign":
        tx = RandomizedSign(gain=params.get("tx_gain", 0.0), p=params.get("tx_p", 0.5))
    else:
        raise ConfigError("tx_kind", f"must be linear or randsign, got {tx_kind!r}")

    adv_kind = params.get("adv_kind", "coord_noise")
    if adv_kind == "coord_noise":
        adv = CoordinatedNoise(variance=params.get("adv_variance", cfg.p_a))
    elif adv_kind == "indep_noise":
        adv = IndependentNoise(variance=params.get("adv_variance", cfg.p_a))
    elif adv_kind == "linear":
        adv = LinearPlusNoise(
            gain=params.get("adv_gain", 0.0),
            coordinated_residual=params.get("adv_coord", True),
        )
    else:
        raise ConfigError(
            "adv_kind", f"must be coord_noise | indep_noise | linear, got {adv_kind!r}"
        )

    rx_kind = params.get("rx_kind", "mmse")
    if rx_kind == "mmse":
        rx = MMSEFromStats(knows_sign=params.get("knows_sign", True))
    elif rx_kind == "fixed":
        rx = FixedLinear(gain=params.get("rx_gain", 0.0))
    else:
        raise ConfigError("rx_kind", f"must be mmse or fixed, got {rx_kind!r}")
    return name, StrategyProfile(tx, adv, rx)


# --- commands ------------------------------------------------------------------


def cmd_analytic(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    alpha_t, alpha_a = analytics.optimal_gains(cfg)
    s1 = analytics.cost_setting1(cfg)
    s1u = analytics.cost_setting1_uncoordinated(cfg)
    s2 = analytics.cost_setting2(cfg)
    sep1 = analytics.separation_baseline(cfg, 1)
    sep2 = analytics.separation_baseline(cfg, 2)
    sigma_t2 = analytics.ceo_sigma_T2(cfg)
    dest = analytics.ceo_estimation_error(cfg)
    report = {
        "alpha_T": alpha_t,
        "alpha_A": alpha_a,
        "cost_setting1": {"literal": s1.paper_literal, "engine": s1.engine},
        "cost_setting1_uncoord": {"literal": s1u.paper_literal, "engine": s1u.engine},
        "cost_setting2": {"literal": s2.paper_literal, "engine": s2.engine},
        "separation": {"setting1": sep1, "setting2": sep2},
        "ceo": {
            "sigma_T2": sigma_t2,
            "D_est_literal": dest.paper_literal,
            "D_est_engine": dest.engine,
        },
    }
    if cfg.k >= 1:
        cr = verifier.coordination_report(cfg)
        report["coordination"] = {
            "setting1_coordinated": cr.setting1_coordinated,
            "setting1_uncoordinated": cr.setting1_uncoordinated,
            "setting2": cr.setting2,
            "separation": cr.separation,
            "uncoord_vs_coord_ok": cr.uncoord_vs_coord_ok,
            "setting1_vs_setting2_ok": cr.setting1_vs_setting2_ok,
            "setting2_vs_separation_ok": cr.setting2_vs_separation_ok,
        }
    if params["format"] == "json":
        return json.dumps(report, indent=2) + "\n", 0
    lines = ["key,value"]

    def emit(prefix: str, obj) -> None:
        if isinstance(obj, dict):
            for key, value in obj.items():
                emit(f"{prefix}_{key}" if prefix else key, value)
        elif isinstance(obj, bool):
            lines.append(f"{prefix},{'pass' if obj else 'fail'}")
        else:
            lines.append(f"{prefix},{_fmt(obj)}")

    emit("", report)
    return "\n".join(lines) + "\n", 0


def cmd_simulate(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    name, profile = _profile_from_params(cfg, params)
    n = params["n"]
    seed = params["seed"]
    workers = params.get("workers")
    analytic = analytics.profile_cost(profile, cfg)
    r = mcsim.simulate(profile, cfg, n, seed, workers)
    header = "profile,n,seed,mean_cost,stderr,power_T,power_A,corr_SXk,analytic_cost"
    row = ",".join(
        [
            name,
            str(n),
            str(seed),
            _fmt(r.mean_cost),
            _fmt(r.stderr),
            _fmt(r.empirical_power_T),
            _fmt(r.empirical_power_A),
            _fmt(r.empirical_corr_SXk),
            _fmt(analytic),
        ]
    )
    if params["format"] == "json":
        obj = {
            "profile": name,
            "n": n,
            "seed": seed,
            "mean_cost": r.mean_cost,
            "stderr": r.stderr,
            "power_T": r.empirical_power_T,
            "power_A": r.empirical_power_A,
            "corr_SXk": r.empirical_corr_SXk,
            "analytic_cost": analytic,
        }
        return json.dumps(obj, indent=2) + "\n", 0
    return header + "\n" + row + "\n", 0


def _sweep_grid(cfg: NetworkConfig, params: dict[str, object], kind: str) -> tuple[float, ...]:
    alpha_t, alpha_a = analytics.optimal_gains(cfg)
    if kind == "bernoulli":
        lo, hi = 0.0, 1.0
    elif kind in ("adversary1", "adversary2"):
        lo, hi = alpha_a, -alpha_a
    else:
        lo, hi = 0.0, alpha_t
    lo = params.get("grid_min", lo)
    hi = params.get("grid_max", hi)
    return verifier.uniform_grid(lo, hi, params["grid_points"])


def cmd_sweep(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    kind = params["sweep"]
    if kind == "saddle-grid":
        return _cmd_saddle_grid(cfg, params)
    if kind not in ("adversary1", "adversary2", "bernoulli"):
        raise ConfigError(
            "sweep", f"must be adversary1 | adversary2 | bernoulli | saddle-grid, got {kind!r}"
        )
    grid = _sweep_grid(cfg, params, kind)
    side = "bernoulli_p" if kind == "bernoulli" else kind
    spec = verifier.SweepSpec(
        swept_side=side,
        grid=grid,
        cfg=cfg,
        mc_n=params["n"],
        seed=params["seed"],
        jam_gain=params.get("jam_gain", 0.0),
    )
    result = verifier.run_sweep(spec)
    if params["format"] == "json":
        obj = {
            "kind": kind,
            "rows": [
                {
                    "param": row.param,
                    "analytic_cost": row.analytic_cost,
                    "mc_cost": row.mc_cost,
                    "mc_stderr": row.mc_stderr,
                }
                for row in result.rows
            ],
            "argmax_param": result.argmax_param,
            "argmin_param": result.argmin_param,
        }
        return json.dumps(obj, indent=2) + "\n", 0
    lines = ["param,analytic_cost,mc_cost,mc_stderr"]
    for row in result.rows:
        mc = _fmt(row.mc_cost) if row.mc_cost is not None else ""
        se = _fmt(row.mc_stderr) if row.mc_stderr is not None else ""
        lines.append(f"{_fmt(row.param)},{_fmt(row.analytic_cost)},{mc},{se}")
    lines.append(f"# argmax_param={_fmt(result.argmax_param)},argmin_param={_fmt(result.argmin_param)}")
    return "\n".join(lines) + "\n", 0


def _cmd_saddle_grid(cfg: NetworkConfig, params: dict[str, object]) -> tuple[str, int]:
    """Two-parameter cost surface (transmitter gain x jammer gain)."""
    alpha_t, alpha_a = analytics.optimal_gains(cfg)
    points = params["grid_points"]
    tx_grid = verifier.uniform_grid(0.0, alpha_t, points)
    adv_grid = verifier.uniform_grid(alpha_a, -alpha_a, points)
    lines = ["tx_gain,adv_gain,analytic_cost"]
    rx = MMSEFromStats(knows_sign=False)
    for a in tx_grid:
        for lam in adv_grid:
            profile = StrategyProfile(
                DeterministicLinear(a), LinearPlusNoise(lam, False), rx
            )
            cost = analytics.profile_cost(profile, cfg)
            lines.append(f"{_fmt(a)},{_fmt(lam)},{_fmt(cost)}")
    lines.append(f"# tx_star={_fmt(alpha_t)},adv_star={_fmt(alpha_a)}")
    return "\n".join(lines) + "\n", 0


def cmd_verify_saddle(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    report = verifier.verify_saddle(
        cfg,
        params["setting"],
        tolerance=params["tolerance"],
        grid_points=params["grid_points"],
    )
    code = 0 if report.passed else 4
    if params["format"] == "json":
        obj = {
            "setting": report.setting,
            "J_star": report.j_star,
            "max_lhs_violation": report.max_lhs_violation,
            "max_rhs_violation": report.max_rhs_violation,
            "worst_adversary_param": report.worst_adversary_param,
            "worst_transmitter_param": report.worst_transmitter_param,
            "tolerance": report.tolerance,
            "passed": report.passed,
            "scope": report.scope,
        }
        return json.dumps(obj, indent=2) + "\n", code
    lines = [
        "key,value",
        f"setting,{report.setting}",
        f"J_star,{_fmt(report.j_star)}",
        f"max_lhs_violation,{_fmt(report.max_lhs_violation)}",
        f"max_rhs_violation,{_fmt(report.max_rhs_violation)}",
        f"worst_adversary_param,{report.worst_adversary_param}",
        f"worst_transmitter_param,{report.worst_transmitter_param}",
        f"tolerance,{_fmt(report.tolerance)}",
        f"passed,{'PASS' if report.passed else 'FAIL'}",
        f"scope,{report.scope}",
    ]
    return "\n".join(lines) + "\n", code


def cmd_ceo(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    units = params["units"]
    sigma_t2 = analytics.ceo_sigma_T2(cfg)
    dest = analytics.ceo_estimation_error(cfg)
    rows: list[tuple[str, float]] = [
        ("sigma_T2", sigma_t2),
        ("D_est_literal", dest.paper_literal),
        ("D_est_engine", dest.engine),
    ]
    if "D_rd" in params:
        rows.append(("rate", analytics.ceo_rate(sigma_t2, params["D_rd"], units)))
    if "R" in params:
        rate = params["R"]
        rows.append(("D_rd_at_R", analytics.ceo_distortion_at_rate(sigma_t2, rate, units)))
        rows.append(("total_distortion", analytics.total_ceo_distortion(cfg, rate, units)))
    if params["format"] == "json":
        obj = {key: value for key, value in rows}
        obj["units"] = units
        return json.dumps(obj, indent=2) + "\n", 0
    lines = ["key,value"] + [f"{key},{_fmt(value)}" for key, value in rows]
    lines.append(f"units,{units}")
    return "\n".join(lines) + "\n", 0


def cmd_maxcorr(params: dict[str, object]) -> tuple[str, int]:
    rho = params["rho"]
    joint = maxcorr.discretize_bivariate_gaussian(rho, params["bins"], params["half_width"])
    result = maxcorr.maximal_correlation(joint)
    lin_f = maxcorr.linearity_score(result.f_vec, result.grid_x, result.marginal_x)
    lin_g = maxcorr.linearity_score(result.g_vec, result.grid_y, result.marginal_y)
    if params["format"] == "json":
        obj = {
            "rho": rho,
            "rho_star": result.rho_star,
            "linearity_f": lin_f,
            "linearity_g": lin_g,
            "first_singular_value": result.first_singular_value,
        }
        return json.dumps(obj, indent=2) + "\n", 0
    header = "rho,rho_star,linearity_f,linearity_g"
    row = ",".join([_fmt(rho), _fmt(result.rho_star), _fmt(lin_f), _fmt(lin_g)])
    return header + "\n" + row + "\n", 0


def cmd_separation(params: dict[str, object]) -> tuple[str, int]:
    cfg = _network(params)
    setting = params["setting"]
    d_sep = analytics.separation_baseline(cfg, setting)
    engine = (
        analytics.cost_setting1_engine(cfg)
        if setting == 1
        else analytics.cost_setting2(cfg).engine
    )
    m_only = cfg.replace(k=0)
    rows = [
        ("setting", float(setting)),
        ("capacity_nats", 0.5 * math.log(cfg.var_s / engine) if cfg.var_s else 0.0),
        ("sigma_T2_M", analytics.ceo_sigma_T2(m_only)),
        ("D_est_M", analytics.ceo_estimation_error(m_only).engine),
        ("D_sep", d_sep),
        ("engine_cost", engine),
    ]
    if params["format"] == "json":
        return json.dumps({key: value for key, value in rows}, indent=2) + "\n", 0
    lines = ["key,value"] + [f"{key},{_fmt(value)}" for key, value in rows]
    return "\n".join(lines) + "\n", 0


_COMMANDS = {
    "analytic": cmd_analytic,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "verify-saddle": cmd_verify_saddle,
    "ceo": cmd_ceo,
    "maxcorr": cmd_maxcorr,
    "separation": cmd_separation,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sensorjam",
        description="Deterministic experiments on the jammed Gaussian sensor network.",
        epilog=(
            "Network keys (with defaults): M=2 K=1 var_S=1 var_WT=1 var_WA=1 "
            "var_Z=1 P_T=1 P_A=1. Common keys: n=100000 seed=1 format=csv "
            "units=nats workers (unset -> serial)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override one configuration key (repeatable)",
        )
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--units", choices=["bits", "nats"])
        p.add_argument("--seed", type=int)
        p.add_argument("--n", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        params = _resolve(args.command, args)
        content, code = _COMMANDS[args.command](params)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasiblePower as exc:
        print(f"error: infeasible strategy: {exc}", file=sys.stderr)
        return 3
    except SensorJamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = params.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)
    return code


if __name__ == "__main__":
    sys.exit(main())
