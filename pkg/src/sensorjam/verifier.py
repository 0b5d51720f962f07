"""Best-response sweeps and equilibrium checks over the implemented strategy families.

Deviations are restricted to single-letter linear-plus-Gaussian families; the
verdicts are therefore family-restricted by construction, and every report
says so. The coordinated setting is checked as a plain saddle (each side
deviates against the other side held); the uncoordinated setting is a
leader-follower game, so transmitter deviations are scored against the
adversary family's best response to the deviation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .analytics import (
    cost_setting1_engine,
    cost_setting1_uncoordinated,
    cost_setting2,
    optimal_gains,
    profile_cost,
    separation_baseline,
    theorem1_profile,
    theorem2_profile,
)
from .errors import ConfigError, NoAdversaries
from .mcsim import simulate
from .model import (
    AdversaryStrategy,
    CoordinatedNoise,
    DeterministicLinear,
    IndependentNoise,
    LinearPlusNoise,
    NetworkConfig,
    RandomizedSign,
    StrategyProfile,
    validate_config,
)

DEFAULT_GRID_POINTS = 41
ANALYTIC_TOL = 1e-9


@dataclass(frozen=True)
class SweepRow:
    param: float
    analytic_cost: float
    mc_cost: float | None = None
    mc_stderr: float | None = None


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    argmax_param: float
    argmin_param: float


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one sweep, used by the CLI front door."""

    swept_side: str  # "adversary1" | "adversary2" | "bernoulli_p"
    grid: tuple[float, ...]
    cfg: NetworkConfig
    mc_n: int = 0
    seed: int = 0
    jam_gain: float = 0.0  # bernoulli_p only


@dataclass(frozen=True)
class SaddleReport:
    setting: int
    j_star: float
    max_lhs_violation: float
    max_rhs_violation: float
    worst_adversary_param: str
    worst_transmitter_param: str
    tolerance: float
    passed: bool
    scope: str = "family-restricted verification"


@dataclass(frozen=True)
class CoordinationReport:
    setting1_coordinated: float
    setting1_uncoordinated: float
    setting2: float
    separation: float
    uncoord_vs_coord_ok: bool
    setting1_vs_setting2_ok: bool
    setting2_vs_separation_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.uncoord_vs_coord_ok
            and self.setting1_vs_setting2_ok
            and self.setting2_vs_separation_ok
        )


def uniform_grid(lo: float, hi: float, points: int = DEFAULT_GRID_POINTS) -> tuple[float, ...]:
    if points < 1:
        raise ConfigError("grid_points", f"must be >= 1, got {points}")
    if points == 1:
        return (lo,)
    step = (hi - lo) / (points - 1)
    return tuple(lo + i * step for i in range(points))


def _check_grid(grid) -> tuple[float, ...]:
    grid = tuple(float(g) for g in grid)
    if not grid:
        raise ConfigError("grid", "must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("grid", "must be strictly increasing")
    return grid


def _argext(rows: list[SweepRow]) -> tuple[float, float]:
    """Value-based argmax/argmin over the analytic column; ties -> smallest param."""
    best_hi = max(r.analytic_cost for r in rows)
    best_lo = min(r.analytic_cost for r in rows)
    argmax = min(r.param for r in rows if r.analytic_cost == best_hi)
    argmin = min(r.param for r in rows if r.analytic_cost == best_lo)
    return argmax, argmin


def _finish_sweep(
    profiles: list[tuple[float, StrategyProfile]],
    cfg: NetworkConfig,
    mc_n: int,
    seed: int,
) -> SweepResult:
    rows = []
    for param, profile in profiles:
        analytic = profile_cost(profile, cfg)
        if mc_n >= 1:
            r = simulate(profile, cfg, mc_n, seed)
            rows.append(SweepRow(param, analytic, r.mean_cost, r.stderr))
        else:
            rows.append(SweepRow(param, analytic))
    argmax, argmin = _argext(rows)
    return SweepResult(tuple(rows), argmax, argmin)


def sweep_adversary_setting1(
    cfg: NetworkConfig,
    grid=None,
    mc_n: int = 0,
    seed: int = 0,
) -> SweepResult:
    """Jammer-gain sweep against sign-randomized transmitters.

    The adversary plays LinearPlusNoise with a coordinated residual; the
    receiver re-optimizes (knowing the sign) at every grid point.
    """
    validate_config(cfg)
    alpha_t, alpha_a = optimal_gains(cfg)
    grid = _check_grid(grid if grid is not None else uniform_grid(alpha_a, -alpha_a))
    base = theorem1_profile(cfg)
    profiles = [
        (lam, replace(base, adversary=LinearPlusNoise(lam, coordinated_residual=True)))
        for lam in grid
    ]
    return _finish_sweep(profiles, cfg, mc_n, seed)


def sweep_adversary_setting2(
    cfg: NetworkConfig,
    grid=None,
    mc_n: int = 0,
    seed: int = 0,
) -> SweepResult:
    """Jammer-gain sweep against deterministic linear transmitters."""
    validate_config(cfg)
    alpha_t, alpha_a = optimal_gains(cfg)
    grid = _check_grid(grid if grid is not None else uniform_grid(alpha_a, -alpha_a))
    base = theorem2_profile(cfg)
    profiles = [
        (lam, replace(base, adversary=LinearPlusNoise(lam, coordinated_residual=False)))
        for lam in grid
    ]
    return _finish_sweep(profiles, cfg, mc_n, seed)


def sweep_bernoulli_p(
    cfg: NetworkConfig,
    grid=None,
    jam_gain: float = 0.0,
    mc_n: int = 0,
    seed: int = 0,
) -> SweepResult:
    """Transmitter randomization sweep against a correlating jammer.

    The jammer's correlation sign is chosen adversarially per grid point:
    each row scores max over gains {+|jam|, -|jam|}, which is what makes the
    symmetric coin the transmitters' best choice. The Monte Carlo column
    simulates the branch the analytic maximum selects.
    """
    validate_config(cfg)
    alpha_t, _ = optimal_gains(cfg)
    grid = _check_grid(grid if grid is not None else uniform_grid(0.0, 1.0))
    if any(p < 0 or p > 1 for p in grid):
        raise ConfigError("grid", "Bernoulli parameters must lie in [0, 1]")
    rows = []
    for p in grid:
        tx = RandomizedSign(gain=alpha_t, p=p)
        candidates = []
        for lam in (jam_gain, -jam_gain):
            adv = LinearPlusNoise(lam, coordinated_residual=True)
            profile = StrategyProfile(tx, adv, theorem1_profile(cfg).receiver)
            candidates.append((profile_cost(profile, cfg), profile))
        analytic, worst_profile = max(candidates, key=lambda t: t[0])
        if mc_n >= 1:
            r = simulate(worst_profile, cfg, mc_n, seed)
            rows.append(SweepRow(p, analytic, r.mean_cost, r.stderr))
        else:
            rows.append(SweepRow(p, analytic))
    argmax, argmin = _argext(rows)
    return SweepResult(tuple(rows), argmax, argmin)


def run_sweep(spec: SweepSpec) -> SweepResult:
    if spec.swept_side == "adversary1":
        return sweep_adversary_setting1(spec.cfg, spec.grid, spec.mc_n, spec.seed)
    if spec.swept_side == "adversary2":
        return sweep_adversary_setting2(spec.cfg, spec.grid, spec.mc_n, spec.seed)
    if spec.swept_side == "bernoulli_p":
        return sweep_bernoulli_p(spec.cfg, spec.grid, spec.jam_gain, spec.mc_n, spec.seed)
    raise ConfigError("sweep", f"unknown sweep kind {spec.swept_side!r}")


# --- saddle verification -------------------------------------------------------


def _adversary_family(
    cfg: NetworkConfig, grid_points: int, shared_randomness: bool
) -> list[tuple[str, AdversaryStrategy]]:
    """Adversary deviations: linear grid x residual sharing, plus pure-noise
    variants over the power budget.

    Coordinated variants require the shared-randomness resource, which only
    exists in the coordinated setting; the uncoordinated setting's family is
    restricted to independent-residual and independent-noise strategies.
    """
    _, alpha_a = optimal_gains(cfg)
    family: list[tuple[str, AdversaryStrategy]] = []
    for lam in uniform_grid(alpha_a, -alpha_a, grid_points):
        if shared_randomness:
            family.append((f"linear(g={lam:.6g},coord)", LinearPlusNoise(lam, True)))
        family.append((f"linear(g={lam:.6g},indep)", LinearPlusNoise(lam, False)))
    for v in uniform_grid(0.0, cfg.p_a, grid_points):
        if shared_randomness:
            family.append((f"coord_noise(v={v:.6g})", CoordinatedNoise(v)))
        family.append((f"indep_noise(v={v:.6g})", IndependentNoise(v)))
    return family


def verify_saddle(
    cfg: NetworkConfig,
    setting: int,
    tolerance: float = ANALYTIC_TOL,
    candidate: StrategyProfile | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    p_points: int = 11,
) -> SaddleReport:
    """Check that no single-side family deviation improves on the candidate.

    Setting 1: adversary deviations against the held transmitters, and
    transmitter (gain, coin-bias) deviations against the held adversary; the
    receiver re-optimizes on both sides. Setting 2: adversary deviations
    against held transmitters, while each transmitter gain deviation is
    scored against the adversary family's best response to it (the follower
    moves second in this setting).
    """
    validate_config(cfg)
    if setting not in (1, 2):
        raise ConfigError("setting", f"must be 1 or 2, got {setting}")
    if candidate is None:
        candidate = theorem1_profile(cfg) if setting == 1 else theorem2_profile(cfg)
    j_star = profile_cost(candidate, cfg)
    alpha_t, _ = optimal_gains(cfg)
    family = _adversary_family(cfg, grid_points, shared_randomness=setting == 1)

    max_lhs = -float("inf")
    worst_adv = ""
    for desc, adv in family:
        cost = profile_cost(replace(candidate, adversary=adv), cfg)
        if cost - j_star > max_lhs:
            max_lhs = cost - j_star
            worst_adv = desc

    max_rhs = -float("inf")
    worst_tx = ""
    if setting == 1:
        for a in uniform_grid(0.0, alpha_t, grid_points):
            for p in uniform_grid(0.0, 1.0, p_points):
                dev = replace(candidate, transmitter=RandomizedSign(gain=a, p=p))
                cost = profile_cost(dev, cfg)
                if j_star - cost > max_rhs:
                    max_rhs = j_star - cost
                    worst_tx = f"randsign(g={a:.6g},p={p:.6g})"
    else:
        for a in uniform_grid(0.0, alpha_t, grid_points):
            dev = replace(candidate, transmitter=DeterministicLinear(gain=a))
            follower_value = max(
                profile_cost(replace(dev, adversary=adv), cfg) for _, adv in family
            )
            if j_star - follower_value > max_rhs:
                max_rhs = j_star - follower_value
                worst_tx = f"linear(g={a:.6g})"

    return SaddleReport(
        setting=setting,
        j_star=j_star,
        max_lhs_violation=max_lhs,
        max_rhs_violation=max_rhs,
        worst_adversary_param=worst_adv,
        worst_transmitter_param=worst_tx,
        tolerance=tolerance,
        passed=max_lhs <= tolerance and max_rhs <= tolerance,
    )


def coordination_report(cfg: NetworkConfig) -> CoordinationReport:
    """Engine costs of the four schemes and the expected cost orderings."""
    validate_config(cfg)
    if cfg.k < 1:
        raise NoAdversaries(f"K = {cfg.k}")
    s1 = cost_setting1_engine(cfg)
    s1u = cost_setting1_uncoordinated(cfg).engine
    s2 = cost_setting2(cfg).engine
    sep = separation_baseline(cfg, 2)

    if cfg.k >= 2 and cfg.p_a > 0:
        uncoord_ok = s1u < s1
    else:
        uncoord_ok = abs(s1u - s1) <= ANALYTIC_TOL * max(1.0, s1)
    if cfg.p_a > 0:
        order12_ok = s1 < s2
    else:
        order12_ok = abs(s1 - s2) <= ANALYTIC_TOL * max(1.0, s2)
    # equality is reachable only with noiseless transmitter observations or
    # an exactly erased channel
    if cfg.var_wt > 0 and s2 < cfg.var_s:
        order2sep_ok = s2 < sep
    else:
        order2sep_ok = s2 <= sep + ANALYTIC_TOL * max(1.0, sep)

    return CoordinationReport(
        setting1_coordinated=s1,
        setting1_uncoordinated=s1u,
        setting2=s2,
        separation=sep,
        uncoord_vs_coord_ok=uncoord_ok,
        setting1_vs_setting2_ok=order12_ok,
        setting2_vs_separation_ok=order2sep_ok,
    )
