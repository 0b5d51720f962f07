"""Simulator and analytic verifier for a Gaussian sensor network with jamming nodes."""

from .analytics import (
    CostReport,
    SecondOrderStats,
    build_corr_matrix,
    ceo_distortion_at_rate,
    ceo_estimation_error,
    ceo_rate,
    ceo_sigma_T2,
    cost_setting1,
    cost_setting1_engine,
    cost_setting1_literal,
    cost_setting1_uncoordinated,
    cost_setting2,
    mac_mi_bound,
    mmse_from_stats,
    optimal_gains,
    profile_cost,
    second_order_stats,
    separation_baseline,
    theorem1_profile,
    theorem1_uncoordinated_profile,
    theorem2_profile,
    total_ceo_distortion,
)
from .maxcorr import (
    DiscretizedJoint,
    discretize_bivariate_gaussian,
    linearity_score,
    maximal_correlation,
)
from .mcsim import (
    SampleBatch,
    SimDetail,
    SimResult,
    empirical_cross_stats,
    empirical_power,
    simulate,
    simulate_detailed,
)
from .model import (
    BLOCK,
    CoordinatedNoise,
    DeterministicLinear,
    FixedLinear,
    IndependentNoise,
    LinearPlusNoise,
    MMSEFromStats,
    NetworkConfig,
    RandomizedSign,
    RandomSource,
    StrategyProfile,
    strategy_power,
    validate_config,
    validate_profile,
)
from .verifier import (
    CoordinationReport,
    SaddleReport,
    SweepResult,
    SweepRow,
    coordination_report,
    sweep_adversary_setting1,
    sweep_adversary_setting2,
    sweep_bernoulli_p,
    verify_saddle,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
