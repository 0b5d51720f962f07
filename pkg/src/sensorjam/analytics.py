"""Closed-form costs and the second-order-statistics MMSE engine.

Every cost in the package reduces to the scalar moments E{SY}, E{Y^2},
E{S^2} of the channel output Y for a given strategy profile, possibly
conditioned on the shared transmitter sign. The engine computes those
moments exactly and serves as the internal ground truth; the *_literal
values reproduce the corresponding printed displays verbatim so the two
routes can be compared (they disagree for some parameter families, which
is the point of reporting both).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DegenerateCEO,
    DegenerateObservation,
    NonPositiveChannelNoise,
    NotPSD,
    RateDomainError,
    RequiresTransmitters,
    ZeroObservationPower,
)
from .model import (
    AdversaryStrategy,
    CoordinatedNoise,
    DeterministicLinear,
    FixedLinear,
    IndependentNoise,
    LinearPlusNoise,
    MMSEFromStats,
    NetworkConfig,
    RandomizedSign,
    StrategyProfile,
    sqrt_nonneg,
    validate_config,
    validate_profile,
)

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SecondOrderStats:
    """Scalar moments of (S, Y) for one profile, optionally sign-conditioned."""

    e_sy: float
    e_yy: float
    e_ss: float
    conditioned_on_sign: int | None = None


@dataclass(frozen=True)
class CostReport:
    """Printed-formula value next to the engine value for the same quantity."""

    paper_literal: float
    engine: float

    @property
    def discrepancy(self) -> float:
        return abs(self.paper_literal - self.engine)


def optimal_gains(cfg: NetworkConfig) -> tuple[float, float]:
    """Full-power linear gains of the two sides.

    Transmitter gain is sqrt(P_T / (var_S + var_WT)); the adversary gain is
    the opposite-sign analogue. Raises DegenerateObservation when a
    denominator vanishes.
    """
    validate_config(cfg)
    den_t = cfg.var_s + cfg.var_wt
    den_a = cfg.var_s + cfg.var_wa
    if den_t <= 0:
        raise DegenerateObservation("var_S + var_WT must be > 0")
    if den_a <= 0:
        raise DegenerateObservation("var_S + var_WA must be > 0")
    alpha_t = math.sqrt(cfg.p_t / den_t)
    alpha_a = -math.sqrt(cfg.p_a / den_a) if cfg.p_a > 0 else 0.0
    return alpha_t, alpha_a


# --- candidate profiles for the two settings ---------------------------------


def theorem1_profile(cfg: NetworkConfig) -> StrategyProfile:
    """Coordinated setting: sign-randomized transmitters, coordinated noise jamming."""
    alpha_t, _ = optimal_gains(cfg)
    return StrategyProfile(
        transmitter=RandomizedSign(gain=alpha_t, p=0.5),
        adversary=CoordinatedNoise(variance=cfg.p_a),
        receiver=MMSEFromStats(knows_sign=True),
    )


def theorem1_uncoordinated_profile(cfg: NetworkConfig) -> StrategyProfile:
    """Same transmitters, but the jammers cannot share a noise realization."""
    alpha_t, _ = optimal_gains(cfg)
    return StrategyProfile(
        transmitter=RandomizedSign(gain=alpha_t, p=0.5),
        adversary=IndependentNoise(variance=cfg.p_a),
        receiver=MMSEFromStats(knows_sign=True),
    )


def theorem2_profile(cfg: NetworkConfig) -> StrategyProfile:
    """Uncoordinated setting: deterministic linear transmitters, opposite-sign jamming."""
    alpha_t, alpha_a = optimal_gains(cfg)
    return StrategyProfile(
        transmitter=DeterministicLinear(gain=alpha_t),
        adversary=LinearPlusNoise(gain=alpha_a, coordinated_residual=False),
        receiver=MMSEFromStats(knows_sign=False),
    )


# --- second-order engine ------------------------------------------------------


def _adversary_terms(adv: AdversaryStrategy, cfg: NetworkConfig) -> tuple[float, float]:
    """(signal coefficient added by the adversaries, their total noise variance)."""
    k = cfg.k
    if isinstance(adv, CoordinatedNoise):
        return 0.0, k**2 * adv.variance
    if isinstance(adv, IndependentNoise):
        return 0.0, k * adv.variance
    if isinstance(adv, LinearPlusNoise):
        r = adv.residual_variance(cfg)
        noise = k * adv.gain**2 * cfg.var_wa + (k**2 if adv.coordinated_residual else k) * r
        return adv.gain * k, noise
    raise TypeError(f"not an adversary strategy: {adv!r}")


def _conditional_stats(
    profile: StrategyProfile, cfg: NetworkConfig, sign: int
) -> SecondOrderStats:
    tx = profile.transmitter
    gain = tx.gain if isinstance(tx, DeterministicLinear) else sign * tx.gain
    adv_coef, adv_noise = _adversary_terms(profile.adversary, cfg)
    coef = gain * cfg.m + adv_coef
    noise = cfg.m * tx.gain**2 * cfg.var_wt + adv_noise + cfg.var_z
    return SecondOrderStats(
        e_sy=coef * cfg.var_s,
        e_yy=coef**2 * cfg.var_s + noise,
        e_ss=cfg.var_s,
        conditioned_on_sign=sign,
    )


def second_order_stats(
    profile: StrategyProfile, cfg: NetworkConfig, sign: int | None = None
) -> SecondOrderStats:
    """Exact moments of the channel output for the given profile.

    With sign=+1/-1 the moments are conditioned on that realization of the
    shared transmitter sign; with sign=None they are the unconditional
    (mixture) moments. Conditioning is a no-op for deterministic encoders.
    """
    validate_profile(profile, cfg)
    if sign is not None:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        return _conditional_stats(profile, cfg, sign)
    if isinstance(profile.transmitter, DeterministicLinear):
        stats = _conditional_stats(profile, cfg, 1)
        return SecondOrderStats(stats.e_sy, stats.e_yy, stats.e_ss, None)
    p = profile.transmitter.p
    plus = _conditional_stats(profile, cfg, 1)
    minus = _conditional_stats(profile, cfg, -1)
    return SecondOrderStats(
        e_sy=p * plus.e_sy + (1 - p) * minus.e_sy,
        e_yy=p * plus.e_yy + (1 - p) * minus.e_yy,
        e_ss=cfg.var_s,
        conditioned_on_sign=None,
    )


def mmse_from_stats(stats: SecondOrderStats) -> tuple[float, float]:
    """Linear MMSE gain and its mean squared error for the given moments."""
    if stats.e_yy <= 0:
        raise ZeroObservationPower(f"E{{Y^2}} = {stats.e_yy}")
    gain = stats.e_sy / stats.e_yy
    mse = stats.e_ss - stats.e_sy**2 / stats.e_yy
    return gain, min(max(mse, 0.0), stats.e_ss)


def _fixed_gain_mse(stats: SecondOrderStats, gain: float) -> float:
    return stats.e_ss - 2.0 * gain * stats.e_sy + gain**2 * stats.e_yy


def receiver_gains(profile: StrategyProfile, cfg: NetworkConfig) -> tuple[float, float]:
    """Linear receiver gains (for sign +1 and -1) implied by the profile."""
    rx = profile.receiver
    if isinstance(rx, FixedLinear):
        return rx.gain, rx.gain
    randomized = isinstance(profile.transmitter, RandomizedSign)
    if rx.knows_sign and randomized:
        g_plus, _ = mmse_from_stats(second_order_stats(profile, cfg, 1))
        g_minus, _ = mmse_from_stats(second_order_stats(profile, cfg, -1))
        return g_plus, g_minus
    g, _ = mmse_from_stats(second_order_stats(profile, cfg, None))
    return g, g


def profile_cost(profile: StrategyProfile, cfg: NetworkConfig) -> float:
    """Exact mean squared error of the profile's receiver.

    For sign-randomized transmitters this is the p/(1-p)-weighted average of
    the sign-conditional errors; the receiver conditions on the sign only
    when it knows the coordination sequence.
    """
    validate_profile(profile, cfg)
    tx = profile.transmitter
    g_plus, g_minus = receiver_gains(profile, cfg)
    if isinstance(tx, DeterministicLinear):
        return _fixed_gain_mse(second_order_stats(profile, cfg, None), g_plus)
    p = tx.p
    mse_plus = _fixed_gain_mse(_conditional_stats(profile, cfg, 1), g_plus)
    mse_minus = _fixed_gain_mse(_conditional_stats(profile, cfg, -1), g_minus)
    return p * mse_plus + (1 - p) * mse_minus


# --- closed forms for the two settings ---------------------------------------


def _require_transmitters(cfg: NetworkConfig) -> None:
    validate_config(cfg)
    if cfg.m < 1:
        raise RequiresTransmitters(f"M = {cfg.m}")


def cost_setting1_literal(cfg: NetworkConfig) -> float:
    """Coordinated-setting cost exactly as printed."""
    _require_transmitters(cfg)
    alpha_t, _ = optimal_gains(cfg)
    num = cfg.m**2 * alpha_t**2 * cfg.var_wt + cfg.k**2 * cfg.p_a + cfg.var_z
    den = cfg.m * alpha_t**2 * cfg.var_s + num
    return cfg.var_s * num / den


def cost_setting1_engine(cfg: NetworkConfig) -> float:
    """Coordinated-setting cost from the second-order engine."""
    _require_transmitters(cfg)
    return profile_cost(theorem1_profile(cfg), cfg)


def cost_setting1(cfg: NetworkConfig) -> CostReport:
    return CostReport(cost_setting1_literal(cfg), cost_setting1_engine(cfg))


def cost_setting1_uncoordinated(cfg: NetworkConfig) -> CostReport:
    """Coordinated setting against jammers that cannot share their noise."""
    _require_transmitters(cfg)
    alpha_t, _ = optimal_gains(cfg)
    num = cfg.m**2 * alpha_t**2 * cfg.var_wt + cfg.k * cfg.p_a + cfg.var_z
    den = cfg.m * alpha_t**2 * cfg.var_s + num
    literal = cfg.var_s * num / den
    engine = profile_cost(theorem1_uncoordinated_profile(cfg), cfg)
    return CostReport(literal, engine)


def cost_setting2(cfg: NetworkConfig) -> CostReport:
    """Uncoordinated (leader-follower) setting cost, printed and engine values."""
    _require_transmitters(cfg)
    alpha_t, alpha_a = optimal_gains(cfg)
    num = (
        cfg.m**2 * alpha_t**2 * cfg.var_wt
        + cfg.k**2 * alpha_a**2 * cfg.var_wa
        + cfg.var_z
    )
    den = (cfg.m * alpha_t + cfg.k * alpha_a) * cfg.var_s + num
    literal = cfg.var_s * num / den
    engine = profile_cost(theorem2_profile(cfg), cfg)
    return CostReport(literal, engine)


# --- remote-source (CEO) quantities -------------------------------------------


def _observation_snr(m: int, k: int, var_s: float, var_wt: float, var_wa: float) -> float:
    """var_S times the total observation precision of the m + k sensors.

    Returns inf when any populated sensor class observes noiselessly.
    """
    if m + k == 0:
        raise DegenerateCEO("no sensors (M + K = 0)")
    if (m >= 1 and var_wt == 0.0) or (k >= 1 and var_wa == 0.0):
        return math.inf
    precision = (m / var_wt if m else 0.0) + (k / var_wa if k else 0.0)
    return var_s * precision


def ceo_sigma_T2(cfg: NetworkConfig) -> float:
    """Variance of the best estimate of the source from all observations."""
    validate_config(cfg)
    g = _observation_snr(cfg.m, cfg.k, cfg.var_s, cfg.var_wt, cfg.var_wa)
    if math.isinf(g):
        return cfg.var_s
    return cfg.var_s * g / (1.0 + g)


def ceo_estimation_error(cfg: NetworkConfig) -> CostReport:
    """Irreducible estimation error of the sensor pool.

    The engine value is the rank-one reduction of the (M+K)-dimensional
    linear MMSE; the literal value reproduces the printed display, which
    drops a var_S factor from two denominator terms and therefore matches
    the engine only at var_S = 1.
    """
    validate_config(cfg)
    g = _observation_snr(cfg.m, cfg.k, cfg.var_s, cfg.var_wt, cfg.var_wa)
    engine = 0.0 if math.isinf(g) else cfg.var_s / (1.0 + g)
    lit_den = cfg.k * cfg.var_wt + cfg.m * cfg.var_wa + cfg.var_wt * cfg.var_wa
    lit_num = cfg.var_s * cfg.var_wt * cfg.var_wa
    literal = lit_num / lit_den if lit_den > 0 else 0.0
    return CostReport(literal, engine)


def ceo_rate(sigma_t2: float, d_rd: float, units: str = "nats") -> float:
    """Rate needed to describe the pooled estimate within distortion d_rd."""
    if d_rd <= 0 or d_rd > sigma_t2:
        raise RateDomainError(f"need 0 < D_rd <= sigma_T2, got D_rd={d_rd}, sigma_T2={sigma_t2}")
    r = 0.5 * math.log(sigma_t2 / d_rd)
    return r / LN2 if units == "bits" else r


def ceo_distortion_at_rate(sigma_t2: float, rate: float, units: str = "nats") -> float:
    """Inverse of ceo_rate; exact round-trip partner."""
    if rate < 0:
        raise RateDomainError(f"rate must be >= 0, got {rate}")
    if sigma_t2 < 0:
        raise RateDomainError(f"sigma_T2 must be >= 0, got {sigma_t2}")
    r_nats = rate * LN2 if units == "bits" else rate
    return sigma_t2 * math.exp(-2.0 * r_nats)


def total_ceo_distortion(cfg: NetworkConfig, rate: float, units: str = "nats") -> float:
    """Rate-distortion term plus the irreducible estimation floor."""
    return ceo_distortion_at_rate(ceo_sigma_T2(cfg), rate, units) + ceo_estimation_error(cfg).engine


# --- channel-input correlation matrix -----------------------------------------


def build_corr_matrix(profile: StrategyProfile, cfg: NetworkConfig) -> np.ndarray:
    """(M+K) x (M+K) matrix of channel-input correlations E{X_p X_r}."""
    validate_profile(profile, cfg)
    m, k = cfg.m, cfg.k
    n = m + k
    r = np.zeros((n, n))
    tx = profile.transmitter
    mean_sign = 1.0 if isinstance(tx, DeterministicLinear) else 2.0 * tx.p - 1.0
    a = tx.gain
    # transmitter block: common source, independent observation noises
    r[:m, :m] = a**2 * cfg.var_s
    r[:m, :m] += np.eye(m) * a**2 * cfg.var_wt
    adv = profile.adversary
    if isinstance(adv, CoordinatedNoise):
        r[m:, m:] = adv.variance
    elif isinstance(adv, IndependentNoise):
        r[m:, m:] = np.eye(k) * adv.variance
    else:
        b = adv.gain
        res = adv.residual_variance(cfg)
        r[m:, m:] = b**2 * cfg.var_s
        r[m:, m:] += np.eye(k) * b**2 * cfg.var_wa
        r[m:, m:] += res if adv.coordinated_residual else np.eye(k) * res
        cross = mean_sign * a * b * cfg.var_s
        r[:m, m:] = cross
        r[m:, :m] = cross
    return r


def mac_mi_bound(r_x: np.ndarray, var_z: float, units: str = "nats") -> float:
    """Mutual-information ceiling of the sum channel for a given input covariance."""
    r_x = np.asarray(r_x, dtype=float)
    if r_x.ndim != 2 or r_x.shape[0] != r_x.shape[1]:
        raise NotPSD(f"matrix must be square, got shape {r_x.shape}")
    scale = max(1.0, float(np.max(np.abs(r_x))))
    if not np.allclose(r_x, r_x.T, atol=1e-9 * scale):
        raise NotPSD("matrix is not symmetric")
    if np.linalg.eigvalsh(r_x).min() < -1e-9 * scale:
        raise NotPSD("matrix has a negative eigenvalue")
    if var_z <= 0:
        raise NonPositiveChannelNoise(var_z)
    total = max(float(r_x.sum()), 0.0)
    val = 0.5 * math.log1p(total / var_z)
    return val / LN2 if units == "bits" else val


# --- digital (separation) baseline --------------------------------------------


def separation_baseline(cfg: NetworkConfig, setting: int) -> float:
    """Distortion of a compress-then-transmit scheme under the same adversary.

    Model: the adversary keeps playing the setting's equilibrium response, so
    the digital codeword crosses an effective Gaussian channel whose output
    SNR equals that of the analog scheme; bits flow at that channel's
    capacity, and the M transmitter observations reach the decoder through
    the remote-source rate-distortion composition (adversary observations
    carry no code).
    """
    _require_transmitters(cfg)
    if setting not in (1, 2):
        raise ConfigError("setting", f"must be 1 or 2, got {setting}")
    if cfg.var_s == 0.0:
        return 0.0
    engine = cost_setting1_engine(cfg) if setting == 1 else cost_setting2(cfg).engine
    capacity = 0.5 * math.log(cfg.var_s / engine)
    m_only = cfg.replace(k=0)
    return ceo_distortion_at_rate(ceo_sigma_T2(m_only), capacity) + ceo_estimation_error(
        m_only
    ).engine
