import numpy as np
import pytest

from sensorjam.analytics import optimal_gains
from sensorjam.model import NetworkConfig

# The three reference networks used throughout the suite.
CFG_A = NetworkConfig(m=2, k=1, var_s=1.0, var_wt=1.0, var_wa=1.0, var_z=1.0, p_t=1.0, p_a=1.0)
CFG_B = CFG_A.replace(k=2)
CFG_C = CFG_A.replace(var_wt=2.0)


@pytest.fixture
def cfg_a() -> NetworkConfig:
    return CFG_A


@pytest.fixture
def cfg_b() -> NetworkConfig:
    return CFG_B


@pytest.fixture
def cfg_c() -> NetworkConfig:
    return CFG_C


def random_config(rng: np.random.Generator, m_lo=1, m_hi=4, k_lo=0, k_hi=3,
                  lo=0.3, hi=3.0) -> NetworkConfig:
    """Log-uniform parameters in [lo, hi]; sensor counts inclusive ranges."""
    return NetworkConfig(
        m=int(rng.integers(m_lo, m_hi + 1)),
        k=int(rng.integers(k_lo, k_hi + 1)),
        var_s=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
        var_wt=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
        var_wa=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
        var_z=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
        p_t=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
        p_a=float(np.exp(rng.uniform(np.log(lo), np.log(hi)))),
    )


def mimic_dominant(cfg: NetworkConfig, cancel_margin=0.8, response_margin=1.1) -> bool:
    """True when the full-power opposite-sign jammer is the family best response.

    Two conditions keep the uncoordinated-setting equilibrium strict: the
    jammers cannot cancel the combined transmitter amplitude (ratio below
    cancel_margin), and the linear response sits at the boundary of its
    feasible interval rather than in the interior.
    """
    alpha_t, alpha_a = optimal_gains(cfg)
    if alpha_t <= 0 or cfg.k < 1:
        return False
    if cfg.k * abs(alpha_a) > cancel_margin * cfg.m * alpha_t:
        return False
    v0 = cfg.m * alpha_t**2 * cfg.var_wt + cfg.k * cfg.p_a + cfg.var_z
    return v0 >= response_margin * cfg.m * alpha_t * cfg.var_s * abs(alpha_a)


def saddle_test_configs(seed: int, count: int) -> list[NetworkConfig]:
    """Random configurations inside the verified equilibrium regime."""
    rng = np.random.default_rng(seed)
    out: list[NetworkConfig] = []
    while len(out) < count:
        cfg = random_config(rng, k_lo=1)
        if mimic_dominant(cfg):
            out.append(cfg)
    return out
