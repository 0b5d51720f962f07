"""Network configuration, strategy types, and the deterministic randomness contract.

A network has M transmitter sensors and K adversarial (jamming) sensors.
Every sensor sees the common Gaussian source through its own additive
Gaussian observation noise and writes onto a shared Gaussian multiple
access channel. All types here are immutable values; they can be shared
freely across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    ConfigError,
    InfeasiblePower,
    NegativeParameter,
    NonPositiveChannelNoise,
)

# Relative slack for power-budget checks, so gains computed as
# sqrt(P / (var_S + var_W)) pass exactly-at-budget checks despite rounding.
POWER_RTOL = 1e-9


@dataclass(frozen=True)
class NetworkConfig:
    """Symmetric network parameters.

    m, k          sensor counts (transmitters, adversaries)
    var_s         source variance
    var_wt        observation-noise variance at each transmitter
    var_wa        observation-noise variance at each adversary
    var_z         channel noise variance (strictly positive)
    p_t, p_a      per-sensor power budgets
    """

    m: int
    k: int
    var_s: float
    var_wt: float
    var_wa: float
    var_z: float
    p_t: float
    p_a: float

    def replace(self, **kw) -> "NetworkConfig":
        return replace(self, **kw)


def validate_config(cfg: NetworkConfig) -> None:
    """Raise a ConfigError naming the offending field if cfg is invalid."""
    if not isinstance(cfg.m, int) or cfg.m < 0:
        raise ConfigError("M", f"must be an integer >= 0, got {cfg.m}")
    if not isinstance(cfg.k, int) or cfg.k < 0:
        raise ConfigError("K", f"must be an integer >= 0, got {cfg.k}")
    if cfg.var_z <= 0:
        raise NonPositiveChannelNoise(cfg.var_z)
    for field, value in (
        ("var_S", cfg.var_s),
        ("var_WT", cfg.var_wt),
        ("var_WA", cfg.var_wa),
        ("P_T", cfg.p_t),
        ("P_A", cfg.p_a),
    ):
        if value < 0:
            raise NegativeParameter(field, value)


# --- strategies -------------------------------------------------------------


@dataclass(frozen=True)
class DeterministicLinear:
    """Transmitter sends gain * U_m."""

    gain: float


@dataclass(frozen=True)
class RandomizedSign:
    """Transmitter sends sign * gain * U_m.

    The sign is +1 with probability p and -1 otherwise, drawn once per time
    index and shared by every transmitter (and by the receiver when it knows
    the coordination sequence). p = 1 is observationally identical to
    DeterministicLinear with the same gain.
    """

    gain: float
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError("p", f"must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class CoordinatedNoise:
    """Every adversary emits the same Gaussian noise realization."""

    variance: float


@dataclass(frozen=True)
class IndependentNoise:
    """Each adversary emits its own i.i.d. Gaussian noise."""

    variance: float


@dataclass(frozen=True)
class LinearPlusNoise:
    """Adversary sends gain * U_k plus residual noise topping up to P_A.

    The residual variance is P_A - gain^2 (var_S + var_WA); it is shared
    across adversaries when coordinated_residual is set, independent per
    adversary otherwise.
    """

    gain: float
    coordinated_residual: bool = False

    def residual_variance(self, cfg: NetworkConfig) -> float:
        r = cfg.p_a - self.gain**2 * (cfg.var_s + cfg.var_wa)
        if r < -POWER_RTOL * max(cfg.p_a, 1.0):
            raise InfeasiblePower(
                f"jammer gain {self.gain} needs power "
                f"{self.gain ** 2 * (cfg.var_s + cfg.var_wa)} > budget {cfg.p_a}"
            )
        return max(r, 0.0)


@dataclass(frozen=True)
class FixedLinear:
    """Receiver applies a fixed linear gain to the channel output."""

    gain: float


@dataclass(frozen=True)
class MMSEFromStats:
    """Receiver uses the linear MMSE gain computed from model moments.

    With knows_sign the receiver shares the transmitters' coordination
    sequence and applies a possibly different gain per sign realization.
    """

    knows_sign: bool = False


TransmitterStrategy = DeterministicLinear | RandomizedSign
AdversaryStrategy = CoordinatedNoise | IndependentNoise | LinearPlusNoise
ReceiverStrategy = FixedLinear | MMSEFromStats


@dataclass(frozen=True)
class StrategyProfile:
    transmitter: TransmitterStrategy
    adversary: AdversaryStrategy
    receiver: ReceiverStrategy


def strategy_power(
    strategy: TransmitterStrategy | AdversaryStrategy, cfg: NetworkConfig
) -> float:
    """Analytic E{X^2} of one sensor's channel input.

    Raises InfeasiblePower if it exceeds the relevant budget by more than
    the relative tolerance. Sign randomization does not change power.
    """
    validate_config(cfg)
    if isinstance(strategy, (DeterministicLinear, RandomizedSign)):
        power = strategy.gain**2 * (cfg.var_s + cfg.var_wt)
        budget, side = cfg.p_t, "transmitter"
    elif isinstance(strategy, (CoordinatedNoise, IndependentNoise)):
        power = strategy.variance
        budget, side = cfg.p_a, "adversary"
    elif isinstance(strategy, LinearPlusNoise):
        power = strategy.gain**2 * (cfg.var_s + cfg.var_wa) + strategy.residual_variance(cfg)
        budget, side = cfg.p_a, "adversary"
    else:
        raise TypeError(f"not a sensor strategy: {strategy!r}")
    if power > budget + POWER_RTOL * max(budget, 1.0):
        raise InfeasiblePower(f"{side} power {power} exceeds budget {budget}")
    return power


def validate_profile(profile: StrategyProfile, cfg: NetworkConfig) -> None:
    """Check power feasibility of both sides under cfg."""
    strategy_power(profile.transmitter, cfg)
    strategy_power(profile.adversary, cfg)


# --- randomness contract ----------------------------------------------------

# Work is always split at this block size, so any parallel execution draws
# exactly the same per-block streams as a serial run.
BLOCK = 1 << 16

# Stream ids of the model's independent noise sources.
STREAM_SOURCE = 0
STREAM_OBS_T = 1  # per-transmitter sub-streams
STREAM_OBS_A = 2  # per-adversary sub-streams
STREAM_SIGN = 3  # shared coordination sign
STREAM_JAM = 4  # sub-stream 0: shared jammer noise; 1..K: independent
STREAM_CHANNEL = 5


def block_generator(
    master_seed: int, stream_id: int, substream: int, block: int
) -> np.random.Generator:
    """Counter-style generator for one 2^16-sample block of one stream."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(stream_id, substream, block))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class RandomSource:
    """Deterministic, splittable random stream.

    Identical (master_seed, stream_id, substream) yield identical sample
    sequences on every platform and regardless of how work is split across
    execution units; distinct ids yield statistically independent streams.
    """

    master_seed: int
    stream_id: int
    substream: int = 0

    def _blocks(self, n: int):
        for block in range(0, (n + BLOCK - 1) // BLOCK):
            lo = block * BLOCK
            yield block, min(BLOCK, n - lo)

    def standard_normal(self, n: int) -> np.ndarray:
        out = np.empty(n)
        pos = 0
        for block, length in self._blocks(n):
            gen = block_generator(self.master_seed, self.stream_id, self.substream, block)
            out[pos : pos + length] = gen.standard_normal(length)
            pos += length
        return out

    def uniform(self, n: int) -> np.ndarray:
        out = np.empty(n)
        pos = 0
        for block, length in self._blocks(n):
            gen = block_generator(self.master_seed, self.stream_id, self.substream, block)
            out[pos : pos + length] = gen.random(length)
            pos += length
        return out

    def bernoulli_signs(self, n: int, p: float) -> np.ndarray:
        """+1 with probability p, -1 otherwise."""
        return np.where(self.uniform(n) < p, 1.0, -1.0)


def sqrt_nonneg(x: float) -> float:
    """sqrt clamped against tiny negative rounding residue."""
    return math.sqrt(x) if x > 0.0 else 0.0
