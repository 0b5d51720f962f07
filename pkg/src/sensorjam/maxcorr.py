"""Maximal correlation of a discretized bivariate distribution via SVD.

The divided matrix Q[i, j] = pmf[i, j] / sqrt(px[i] * py[j]) always has
leading singular value 1 with singular vectors proportional to the square
roots of the marginals (the constant functions); the second singular value
is the maximal correlation and its singular vectors are the optimal
zero-mean unit-variance transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateCorrelation, DegenerateMarginal

MASS_TOL = 1e-12
PRUNE_EPS = 1e-15


@dataclass(frozen=True)
class DiscretizedJoint:
    """Bin centers and a nonnegative pmf summing to one."""

    grid_x: np.ndarray
    grid_y: np.ndarray
    pmf: np.ndarray

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.ndim != 2 or pmf.shape != (len(self.grid_x), len(self.grid_y)):
            raise ConfigError("pmf", f"shape {pmf.shape} does not match the grids")
        if pmf.min() < 0:
            raise ConfigError("pmf", f"entries must be >= 0, min is {pmf.min()}")
        if abs(pmf.sum() - 1.0) > MASS_TOL:
            raise ConfigError("pmf", f"total mass {pmf.sum()} is not 1")


@dataclass(frozen=True)
class MaxCorrResult:
    rho_star: float
    f_vec: np.ndarray
    g_vec: np.ndarray
    grid_x: np.ndarray
    grid_y: np.ndarray
    marginal_x: np.ndarray
    marginal_y: np.ndarray
    first_singular_value: float


def discretize_bivariate_gaussian(
    rho: float, n: int = 64, half_width: float = 4.0
) -> DiscretizedJoint:
    """Midpoint-rule pmf of the standard bivariate normal on a square window."""
    if abs(rho) >= 1.0:
        raise DegenerateCorrelation(f"|rho| must be < 1, got {rho}")
    if n < 8:
        raise ConfigError("n", f"must be >= 8, got {n}")
    if half_width <= 0:
        raise ConfigError("half_width", f"must be > 0, got {half_width}")
    step = 2.0 * half_width / n
    centers = -half_width + (np.arange(n) + 0.5) * step
    q = 1.0 / (1.0 - rho**2)
    # exp(-q(x^2 - 2 rho x y + y^2)/2) factored into separable and cross parts
    base = np.exp(-0.5 * q * centers**2)
    cross = np.exp(q * rho * np.outer(centers, centers))
    pmf = np.outer(base, base) * cross
    pmf /= pmf.sum()
    return DiscretizedJoint(grid_x=centers.copy(), grid_y=centers.copy(), pmf=pmf)


def _pruned(joint: DiscretizedJoint):
    pmf = np.asarray(joint.pmf, dtype=float)
    px = pmf.sum(axis=1)
    py = pmf.sum(axis=0)
    keep_x = px > PRUNE_EPS
    keep_y = py > PRUNE_EPS
    if not keep_x.any() or not keep_y.any():
        raise DegenerateMarginal("all bins below the prune threshold")
    pmf = pmf[np.ix_(keep_x, keep_y)]
    px = pmf.sum(axis=1)
    py = pmf.sum(axis=0)
    if px.min() <= 0 or py.min() <= 0:
        raise DegenerateMarginal("a retained bin has zero marginal mass")
    return pmf, np.asarray(joint.grid_x)[keep_x], np.asarray(joint.grid_y)[keep_y], px, py


def maximal_correlation(joint: DiscretizedJoint) -> MaxCorrResult:
    """Second singular value of the divided pmf with its transform pair.

    The returned f_vec/g_vec are zero mean and unit variance under the
    (pruned) marginals and satisfy E{f g} = rho_star; the pruned grids and
    marginals ride along for downstream scoring.
    """
    pmf, gx, gy, px, py = _pruned(joint)
    if min(pmf.shape) < 2:
        raise DegenerateMarginal("need at least two bins per axis after pruning")
    q = pmf / np.sqrt(np.outer(px, py))
    u, s, vt = np.linalg.svd(q, full_matrices=False)
    f = u[:, 1] / np.sqrt(px)
    g = vt[1, :] / np.sqrt(py)
    # re-center and re-scale exactly under the marginals
    f = f - float(px @ f)
    g = g - float(py @ g)
    f /= np.sqrt(float(px @ f**2))
    g /= np.sqrt(float(py @ g**2))
    # deterministic orientation: f correlates nonnegatively with its grid
    if float(px @ (f * (gx - float(px @ gx)))) < 0:
        f, g = -f, -g
    return MaxCorrResult(
        rho_star=float(s[1]),
        f_vec=f,
        g_vec=g,
        grid_x=gx,
        grid_y=gy,
        marginal_x=px,
        marginal_y=py,
        first_singular_value=float(s[0]),
    )


def linearity_score(vec: np.ndarray, grid: np.ndarray, weights: np.ndarray) -> float:
    """Squared correlation between a transform and the identity map.

    1.0 means the transform is exactly linear in the bin centers under the
    given marginal weights; 0.0 means uncorrelated with them.
    """
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    xc = np.asarray(grid, dtype=float) - float(w @ grid)
    vc = np.asarray(vec, dtype=float) - float(w @ vec)
    var_x = float(w @ xc**2)
    var_v = float(w @ vc**2)
    if var_x <= 0 or var_v <= 0:
        return 0.0
    score = float(w @ (vc * xc)) ** 2 / (var_v * var_x)
    return min(max(score, 0.0), 1.0)


def product_joint(joint: DiscretizedJoint) -> DiscretizedJoint:
    """Joint of two independent copies, flattened to pair-index bins."""
    pmf = np.asarray(joint.pmf, dtype=float)
    kron = np.kron(pmf, pmf)
    kron /= kron.sum()
    nx = pmf.shape[0] ** 2
    ny = pmf.shape[1] ** 2
    return DiscretizedJoint(
        grid_x=np.arange(nx, dtype=float),
        grid_y=np.arange(ny, dtype=float),
        pmf=kron,
    )
