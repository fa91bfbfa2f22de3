"""Forward simulation of continuous latent space networks.

Positions are drawn i.i.d. from a geometry-specific prior, every
unordered pair is scored by a distance-decaying link function, and edges
are independent Bernoulli draws. The temperature controls how sharply
the link decays: small temperatures approach the deterministic rule
"connect iff distance < alpha".
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from . import geometry
from ._kernels import euc_pairwise_distances, hyp_pairwise_distances
from .errors import CalibrationError
from .graphs import Graph

# Gaussian spread divisor giving 95% of Euclidean points inside radius R
# (sqrt of the chi-square(2) 0.95 quantile, rounded as used throughout).
EUCLIDEAN_SPREAD_DIVISOR = 2.448


class Geometry(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    EUCLIDEAN = "euclidean"
    SPHERICAL = "spherical"


@dataclass(frozen=True)
class ModelParams:
    """Global parameters: disk radius R, threshold alpha, temperature T."""

    R: float
    alpha: float
    T: float

    def __post_init__(self):
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ValueError(f"R must be positive and finite, got {self.R}")
        if not (0.0 < self.T <= 0.5):
            raise ValueError(f"T must lie in (0, 0.5], got {self.T}")
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")


@dataclass
class LatentConfiguration:
    """Sampled positions plus the parameters that generated them."""

    geometry: Geometry
    positions: np.ndarray  # (n, 2) as (r, theta) or (x, y); (n, 3) on S^2
    params: ModelParams
    tau: float | None = None  # Euclidean spread; fixed to R / 2.448

    def __post_init__(self):
        self.geometry = Geometry(self.geometry)
        self.positions = np.asarray(self.positions, dtype=np.float64)
        n = self.positions.shape[0]
        if n < 2:
            raise ValueError("configurations need at least 2 positions")
        if self.geometry is Geometry.SPHERICAL:
            if self.positions.shape != (n, 3):
                raise ValueError("spherical positions must be (n, 3)")
        elif self.positions.shape != (n, 2):
            raise ValueError("positions must be (n, 2)")
        if self.geometry is Geometry.HYPERBOLIC:
            if np.any(self.positions[:, 0] < 0) or np.any(self.positions[:, 0] > self.params.R + 1e-12):
                raise ValueError("hyperbolic radii must lie in [0, R]")
        if self.geometry is Geometry.EUCLIDEAN and self.tau is None:
            self.tau = self.params.R / EUCLIDEAN_SPREAD_DIVISOR

    @property
    def n(self):
        return self.positions.shape[0]

    def pairwise_distances(self):
        """Condensed (i < j, row-major) latent distances."""
        if self.geometry is Geometry.HYPERBOLIC:
            return hyp_pairwise_distances(
                np.ascontiguousarray(self.positions[:, 0]),
                np.ascontiguousarray(self.positions[:, 1]),
            )
        if self.geometry is Geometry.EUCLIDEAN:
            return euc_pairwise_distances(self.positions)
        return geometry.sphere_pairwise_distances(self.positions)


def link_probability(d, params: ModelParams):
    """Connection probability 1/(1 + exp((d - alpha)/(2T))).

    Strictly decreasing in distance; evaluated through the log-odds
    (alpha - d)/(2T) so saturated probabilities stay exact 0/1 floats
    instead of overflowing.
    """
    return expit((params.alpha - np.asarray(d, dtype=np.float64)) / (2.0 * params.T))


def link_log_odds(d, params: ModelParams):
    return (params.alpha - np.asarray(d, dtype=np.float64)) / (2.0 * params.T)


# generation-only presets for the temperature-free link variants
ALT_LINKS = {
    "double-logistic": lambda d: 2.0 * expit(-np.asarray(d, dtype=np.float64)),
    "neg-exponential": lambda d: np.exp(-np.asarray(d, dtype=np.float64)),
}


def sample_positions(geom, n, params: ModelParams, rng) -> LatentConfiguration:
    """n i.i.d. positions from the geometry's prior.

    Hyperbolic: uniform w.r.t. area in the radius-R disk. Euclidean:
    N(0, tau^2 I) with tau = R / 2.448 so the spatial spread matches the
    disk. Spherical: uniform on S^2.
    """
    geom = Geometry(geom)
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    if geom is Geometry.HYPERBOLIC:
        r, theta = geometry.sample_disk_positions(params.R, n, rng)
        pos = np.column_stack([r, theta])
        return LatentConfiguration(geom, pos, params)
    if geom is Geometry.EUCLIDEAN:
        tau = params.R / EUCLIDEAN_SPREAD_DIVISOR
        pos = rng.normal(0.0, tau, size=(n, 2))
        return LatentConfiguration(geom, pos, params, tau=tau)
    return LatentConfiguration(geom, geometry.sample_sphere_positions(n, rng), params)


def generate_graph(config: LatentConfiguration, rng, uniforms=None, link="fermi-dirac") -> Graph:
    """Bernoulli edge draws over all unordered pairs.

    Pairs are visited in row-major i < j order and pair k consumes the
    k-th uniform, so a fixed generator state reproduces the same graph
    regardless of any internal chunking. `uniforms` can inject the draws
    directly (testing / counter-based parallel streams).
    """
    d = config.pairwise_distances()
    if link == "fermi-dirac":
        p = link_probability(d, config.params)
    else:
        p = ALT_LINKS[link](d)
    if uniforms is None:
        uniforms = rng.random(d.shape[0])
    else:
        uniforms = np.asarray(uniforms, dtype=np.float64)
        if uniforms.shape != d.shape:
            raise ValueError("uniforms must have one entry per unordered pair")
    n = config.n
    i, j = np.triu_indices(n, k=1)
    hit = uniforms < p
    return Graph(n, zip(i[hit].tolist(), j[hit].tolist()))


def expected_density(config: LatentConfiguration, link="fermi-dirac") -> float:
    """Mean link probability over the unordered pairs of this configuration."""
    d = config.pairwise_distances()
    if link == "fermi-dirac":
        return float(np.mean(link_probability(d, config.params)))
    return float(np.mean(ALT_LINKS[link](d)))


def calibrate_alpha_for_density(geom, n, R, T, target_density, rng,
                                replicates=20, rel_tol=0.05, max_iter=200):
    """Bisect alpha so mean edge density matches the target.

    Density is the Monte Carlo average of expected_density over
    `replicates` fresh position draws (common across alpha evaluations,
    exploiting monotonicity of density in alpha). Raises
    CalibrationError when the target is unreachable within
    alpha in [-10R, 10R].
    """
    geom = Geometry(geom)
    if geom is Geometry.SPHERICAL:
        raise CalibrationError("density calibration is not supported on the sphere")
    if not (0.0 < target_density < 1.0):
        raise ValueError("target density must lie in (0, 1)")
    base = ModelParams(R=R, alpha=R, T=T)
    dists = [
        sample_positions(geom, n, base, rng).pairwise_distances()
        for _ in range(max(int(replicates), 1))
    ]

    def density_at(alpha):
        params = ModelParams(R=R, alpha=alpha, T=T)
        return float(np.mean([np.mean(link_probability(d, params)) for d in dists]))

    lo, hi = -10.0 * R, 10.0 * R
    f_lo, f_hi = density_at(lo), density_at(hi)
    band = (target_density * (1.0 - rel_tol), target_density * (1.0 + rel_tol))
    if f_hi < band[0] or f_lo > band[1]:
        raise CalibrationError(
            f"target density {target_density} unreachable in alpha bracket "
            f"[{lo:.3g}, {hi:.3g}] (attains [{f_lo:.3g}, {f_hi:.3g}])"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = density_at(mid)
        if band[0] <= f_mid <= band[1]:
            return mid
        if f_mid < target_density:
            lo = mid
        else:
            hi = mid
    raise CalibrationError("bisection failed to reach the target density band")
