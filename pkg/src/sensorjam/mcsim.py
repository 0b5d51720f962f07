"""Blocked, reproducible Monte Carlo realization of the full pipeline.

Samples are generated in fixed blocks of 2^16 indices; each block owns its
own counter-based generators, and block partials are combined by a pairwise
tree in block order. A run is therefore bit-identical for a given
(profile, cfg, n, seed) no matter how many workers execute the blocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytics import receiver_gains
from .errors import NoAdversaries, ZeroSamples
from .model import (
    BLOCK,
    CoordinatedNoise,
    DeterministicLinear,
    IndependentNoise,
    LinearPlusNoise,
    NetworkConfig,
    RandomizedSign,
    STREAM_CHANNEL,
    STREAM_JAM,
    STREAM_OBS_A,
    STREAM_OBS_T,
    STREAM_SIGN,
    STREAM_SOURCE,
    StrategyProfile,
    block_generator,
    sqrt_nonneg,
    validate_profile,
)


@dataclass(frozen=True)
class SimResult:
    """Empirical cost and power estimates with plug-in standard errors."""

    mean_cost: float
    stderr: float
    n: int
    empirical_power_T: float
    empirical_power_A: float
    empirical_corr_SXk: float


@dataclass(frozen=True)
class SimDetail:
    """SimResult plus the standard errors of the auxiliary statistics."""

    result: SimResult
    power_T_stderr: float
    power_A_stderr: float
    corr_SXk_stderr: float
    corr_ZXk: float
    corr_ZXk_stderr: float


@dataclass(frozen=True)
class SampleBatch:
    """Raw per-index draws for one block, already scaled to model variances.

    gamma is all ones for deterministic transmitters; theta is the shared
    (coordinated) jammer stream in standard-normal units.
    """

    s: np.ndarray
    w_t: np.ndarray  # (M, L)
    w_a: np.ndarray  # (K, L)
    gamma: np.ndarray
    theta: np.ndarray
    z: np.ndarray


def draw_batch(
    profile: StrategyProfile, cfg: NetworkConfig, seed: int, block: int, length: int
) -> SampleBatch:
    s = block_generator(seed, STREAM_SOURCE, 0, block).standard_normal(length)
    s *= sqrt_nonneg(cfg.var_s)
    w_t = np.empty((cfg.m, length))
    for m in range(cfg.m):
        w_t[m] = block_generator(seed, STREAM_OBS_T, m, block).standard_normal(length)
    w_t *= sqrt_nonneg(cfg.var_wt)
    w_a = np.empty((cfg.k, length))
    for k in range(cfg.k):
        w_a[k] = block_generator(seed, STREAM_OBS_A, k, block).standard_normal(length)
    w_a *= sqrt_nonneg(cfg.var_wa)
    tx = profile.transmitter
    if isinstance(tx, RandomizedSign):
        u = block_generator(seed, STREAM_SIGN, 0, block).random(length)
        gamma = np.where(u < tx.p, 1.0, -1.0)
    else:
        gamma = np.ones(length)
    theta = block_generator(seed, STREAM_JAM, 0, block).standard_normal(length)
    z = block_generator(seed, STREAM_CHANNEL, 0, block).standard_normal(length)
    z *= sqrt_nonneg(cfg.var_z)
    return SampleBatch(s=s, w_t=w_t, w_a=w_a, gamma=gamma, theta=theta, z=z)


def transmitter_inputs(batch: SampleBatch, profile: StrategyProfile) -> np.ndarray:
    """(M, L) matrix of transmitter channel inputs."""
    tx = profile.transmitter
    obs = batch.s[None, :] + batch.w_t
    return tx.gain * batch.gamma[None, :] * obs


def adversary_inputs(
    batch: SampleBatch,
    profile: StrategyProfile,
    cfg: NetworkConfig,
    seed: int,
    block: int,
) -> np.ndarray:
    """(K, L) matrix of adversary channel inputs."""
    adv = profile.adversary
    k, length = batch.w_a.shape
    if isinstance(adv, CoordinatedNoise):
        return np.broadcast_to(sqrt_nonneg(adv.variance) * batch.theta, (k, length)).copy()
    if isinstance(adv, IndependentNoise):
        scale = sqrt_nonneg(adv.variance)
        out = np.empty((k, length))
        for j in range(k):
            draws = block_generator(seed, STREAM_JAM, 1 + j, block).standard_normal(length)
            out[j] = scale * draws
        return out
    res = adv.residual_variance(cfg)
    out = adv.gain * (batch.s[None, :] + batch.w_a)
    if res > 0:
        scale = sqrt_nonneg(res)
        if adv.coordinated_residual:
            out += scale * batch.theta[None, :]
        else:
            for j in range(k):
                draws = block_generator(seed, STREAM_JAM, 1 + j, block).standard_normal(length)
                out[j] += scale * draws
    return out


# Partial-sum layout for one block.
_N, _E2, _E4, _XT2, _XT4, _XA2, _XA4, _SX, _SX2, _ZX, _ZX2 = range(11)


def _block_stats(
    profile: StrategyProfile,
    cfg: NetworkConfig,
    seed: int,
    block: int,
    length: int,
    gains: tuple[float, float],
) -> np.ndarray:
    batch = draw_batch(profile, cfg, seed, block, length)
    x_t = transmitter_inputs(batch, profile)
    x_a = adversary_inputs(batch, profile, cfg, seed, block)
    y = x_t.sum(axis=0) + x_a.sum(axis=0) + batch.z
    g_plus, g_minus = gains
    shat = np.where(batch.gamma > 0, g_plus, g_minus) * y
    e2 = (batch.s - shat) ** 2
    out = np.zeros(11)
    out[_N] = length
    out[_E2] = e2.sum()
    out[_E4] = (e2**2).sum()
    xt2 = x_t**2
    out[_XT2] = xt2.sum()
    out[_XT4] = (xt2**2).sum()
    xa2 = x_a**2
    out[_XA2] = xa2.sum()
    out[_XA4] = (xa2**2).sum()
    if cfg.k >= 1:
        sx = batch.s * x_a[0]
        out[_SX] = sx.sum()
        out[_SX2] = (sx**2).sum()
        zx = batch.z * x_a[0]
        out[_ZX] = zx.sum()
        out[_ZX2] = (zx**2).sum()
    return out


def _pairwise_reduce(parts: list[np.ndarray]) -> np.ndarray:
    while len(parts) > 1:
        parts = [
            parts[i] + parts[i + 1] if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


def _mean_and_stderr(total: float, total_sq: float, count: float) -> tuple[float, float]:
    if count <= 0:
        return float("nan"), float("nan")
    mean = total / count
    var = max(total_sq / count - mean**2, 0.0)
    return mean, float(np.sqrt(var / count))


def simulate_detailed(
    profile: StrategyProfile,
    cfg: NetworkConfig,
    n: int,
    seed: int,
    workers: int | None = None,
) -> SimDetail:
    if n < 1:
        raise ZeroSamples(f"n must be >= 1, got {n}")
    validate_profile(profile, cfg)
    gains = receiver_gains(profile, cfg)
    blocks = [(b, min(BLOCK, n - b * BLOCK)) for b in range((n + BLOCK - 1) // BLOCK)]

    def job(args):
        block, length = args
        return _block_stats(profile, cfg, seed, block, length, gains)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, blocks))
    else:
        parts = [job(b) for b in blocks]
    tot = _pairwise_reduce(parts)

    mean_cost, cost_se = _mean_and_stderr(tot[_E2], tot[_E4], tot[_N])
    p_t, p_t_se = _mean_and_stderr(tot[_XT2], tot[_XT4], tot[_N] * cfg.m)
    p_a, p_a_se = _mean_and_stderr(tot[_XA2], tot[_XA4], tot[_N] * cfg.k)
    if cfg.k >= 1:
        sx, sx_se = _mean_and_stderr(tot[_SX], tot[_SX2], tot[_N])
        zx, zx_se = _mean_and_stderr(tot[_ZX], tot[_ZX2], tot[_N])
    else:
        sx = sx_se = zx = zx_se = float("nan")
    result = SimResult(
        mean_cost=mean_cost,
        stderr=cost_se,
        n=n,
        empirical_power_T=p_t,
        empirical_power_A=p_a,
        empirical_corr_SXk=sx,
    )
    return SimDetail(
        result=result,
        power_T_stderr=p_t_se,
        power_A_stderr=p_a_se,
        corr_SXk_stderr=sx_se,
        corr_ZXk=zx,
        corr_ZXk_stderr=zx_se,
    )


def simulate(
    profile: StrategyProfile,
    cfg: NetworkConfig,
    n: int,
    seed: int,
    workers: int | None = None,
) -> SimResult:
    """Empirical MSE and channel statistics; deterministic in its arguments."""
    return simulate_detailed(profile, cfg, n, seed, workers).result


def empirical_power(
    profile: StrategyProfile, cfg: NetworkConfig, n: int, seed: int
) -> tuple[float, float]:
    """Sample means of the per-sensor squared channel inputs."""
    r = simulate(profile, cfg, n, seed)
    return r.empirical_power_T, r.empirical_power_A


def empirical_cross_stats(
    profile: StrategyProfile, cfg: NetworkConfig, n: int, seed: int
) -> tuple[float, float]:
    """Sample E{S X_k} and E{Z X_k} for one adversary's channel input."""
    if cfg.k < 1:
        raise NoAdversaries(f"K = {cfg.k}")
    d = simulate_detailed(profile, cfg, n, seed)
    return d.result.empirical_corr_SXk, d.corr_ZXk
