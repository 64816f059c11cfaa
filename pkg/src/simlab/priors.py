"""Prior samplers: sieve Gaussian shapes, stick-breaking measures, and
log-Gaussian smooth densities.

The shape prior activates all frequencies up to a random level drawn
from ``lambda(l) ~ exp(-c l^2 (log l)^rho)`` and fills them with
centered complex Gaussians of sample-size-dependent variance
``xi_n^2 = n^{-mu} (log n)^{-zeta}``.  The shift prior is either a
truncated stick-breaking (Dirichlet-process) measure or the
exponentiated, normalized sum of a repeatedly centered-integrated
Brownian bridge and low-frequency sinusoids, restricted to a smoothness
ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import FourierSeries
from .shifts import Discrete, GridDensity, sample as sample_shift, sobolev_radius
from .special import complex_gaussian_array

__all__ = [
    "SievePriorConfig",
    "DirichletPriorConfig",
    "SmoothPriorConfig",
    "RejectionLimitError",
    "lambda_pmf",
    "sample_f",
    "sample_dp",
    "j_operator",
    "psi",
    "brownian_bridge",
    "sample_smooth",
    "sample_smooth_with_process",
    "parse_flat_config",
]


@dataclass(frozen=True)
class SievePriorConfig:
    """Parameters of the Gaussian sieve prior on shapes.

    ``c`` is the single decay constant of the level distribution (the
    admissible family is bracketed between two such exponentials; taking
    them equal picks its simplest member), ``rho`` the log power in
    (1, 2), and ``(mu, zeta)`` the variance exponents.
    """

    n: int
    mu: float = 0.25
    zeta: float = 1.5
    c: float = 1.0
    rho: float = 1.5
    l_max: int = 64

    def __post_init__(self):
        if not 1.0 < self.rho < 2.0:
            raise ValueError("rho must lie in (1, 2)")
        if self.l_max < 1:
            raise ValueError("l_max must be at least 1")
        if self.n < 2:
            raise ValueError("need n >= 2 so that log n > 0")

    @property
    def xi2(self) -> float:
        """Coefficient variance ``n^{-mu} (log n)^{-zeta}``."""
        return self.n ** (-self.mu) * math.log(self.n) ** (-self.zeta)

    @staticmethod
    def adaptive(n: int, **kw) -> "SievePriorConfig":
        """Smoothness-agnostic preset ``mu = 1/4, zeta = 3/2``."""
        return SievePriorConfig(n=n, mu=0.25, zeta=1.5, **kw)

    @staticmethod
    def non_adaptive(n: int, s: float, **kw) -> "SievePriorConfig":
        """Preset ``mu = 2 / (2s + 2), zeta = 0`` tied to smoothness ``s``."""
        return SievePriorConfig(n=n, mu=2.0 / (2.0 * s + 2.0), zeta=0.0, **kw)


def lambda_pmf(cfg: SievePriorConfig) -> np.ndarray:
    """Level distribution on ``{1, .., l_max}``.

    ``lambda(l)`` is proportional to ``exp(-c l^2 (log l)^rho)``; the
    entry for ``l = 1`` is proportional to 1 since ``log 1 = 0``.
    """
    levels = np.arange(1, cfg.l_max + 1, dtype=float)
    weights = np.exp(-cfg.c * levels**2 * np.log(levels) ** cfg.rho)
    return weights / weights.sum()


def sample_f(cfg: SievePriorConfig, rng: np.random.Generator) -> FourierSeries:
    """One shape draw: pick a level, then i.i.d. complex Gaussians below it."""
    pmf = lambda_pmf(cfg)
    level = int(rng.choice(cfg.l_max, p=pmf)) + 1
    coeffs = math.sqrt(cfg.xi2) * complex_gaussian_array(rng, 2 * level + 1)
    return FourierSeries(level, coeffs)


@dataclass(frozen=True)
class DirichletPriorConfig:
    """Stick-breaking prior: base density, total mass, and truncation."""

    base_density: GridDensity
    total_mass: float = 1.0
    truncation: int = 200

    def __post_init__(self):
        if self.total_mass <= 0:
            raise ValueError("total mass must be positive")
        if self.truncation < 1:
            raise ValueError("truncation must be at least 1")


def stick_weights(
    cfg: DirichletPriorConfig, rng: np.random.Generator
) -> tuple[np.ndarray, float]:
    """Truncated stick-breaking weights and the residual mass.

    ``V_i ~ Beta(1, m)`` i.i.d.; the last stick absorbs whatever is left
    so the weights sum to one exactly.  The residual (what the last
    stick absorbed) is returned for diagnostics.
    """
    k = cfg.truncation
    v = rng.beta(1.0, cfg.total_mass, size=k - 1) if k > 1 else np.empty(0)
    remaining = np.concatenate([[1.0], np.cumprod(1.0 - v)])
    w = np.empty(k)
    w[: k - 1] = v * remaining[:-1]
    w[k - 1] = remaining[-1]
    return w, float(remaining[-1])


def sample_dp(cfg: DirichletPriorConfig, rng: np.random.Generator) -> Discrete:
    """One random measure from the truncated Dirichlet process."""
    w, _ = stick_weights(cfg, rng)
    atoms = sample_shift(cfg.base_density, cfg.truncation, rng)
    return Discrete(atoms, w)


@dataclass(frozen=True)
class SmoothPriorConfig:
    """Log-Gaussian smooth-density prior on a regularity-``nu`` ball."""

    nu: float
    radius: float
    grid: int = 1024
    max_rejections: int = 1000

    def __post_init__(self):
        if self.nu < 0.5:
            raise ValueError("regularity must satisfy nu >= 1/2")
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def k_nu(self) -> int:
        """Integration depth ``floor(nu - 1/2)``."""
        return int(math.floor(self.nu - 0.5))


class RejectionLimitError(RuntimeError):
    """Smoothness-ball rejection sampling exhausted its retry budget."""

    def __init__(self, rejections: int):
        self.rejections = rejections
        super().__init__(
            f"smooth prior rejected {rejections} consecutive draws outside the ball"
        )


def j_operator(values: np.ndarray) -> np.ndarray:
    """Centered integration ``t -> int_0^t f - t int_0^1 f`` on a closed grid.

    The output vanishes at both endpoints by construction.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("need a closed uniform grid of values")
    h = 1.0 / (v.size - 1)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * h * (v[1:] + v[:-1]))])
    t = np.linspace(0.0, 1.0, v.size)
    return cum - t * cum[-1]


def psi(k: int, t):
    """Periodic correction map ``sin(2 pi k t) + cos(2 pi k t)``, ``k >= 1``.

    Arguments are reduced modulo 1 first, so the periodicity holds
    exactly in floating point.
    """
    if k < 1:
        raise ValueError("index must be at least 1")
    tt = np.mod(np.asarray(t, dtype=float), 1.0)
    out = np.sin(2.0 * np.pi * k * tt) + np.cos(2.0 * np.pi * k * tt)
    if np.isscalar(t):
        return float(out)
    return out


def brownian_bridge(grid: int, rng: np.random.Generator) -> np.ndarray:
    """Scaled random walk pinned at both ends, on the closed grid ``i/grid``."""
    steps = rng.normal(0.0, math.sqrt(1.0 / grid), size=grid)
    w = np.concatenate([[0.0], np.cumsum(steps)])
    t = np.linspace(0.0, 1.0, grid + 1)
    return w - t * w[-1]


def gp_draw(cfg: SmoothPriorConfig, rng: np.random.Generator) -> np.ndarray:
    """One trajectory of the underlying Gaussian process on the closed grid."""
    w = brownian_bridge(cfg.grid, rng)
    for _ in range(cfg.k_nu):
        w = j_operator(w)
    t = np.linspace(0.0, 1.0, cfg.grid + 1)
    for i in range(1, cfg.k_nu + 1):
        w = w + rng.normal() * psi(i, t)
    return w


def _densify(w: np.ndarray) -> GridDensity:
    scaled = np.exp(w - np.max(w))
    mass = np.trapezoid(scaled, dx=1.0 / (scaled.size - 1))
    return GridDensity(scaled / mass)


def sample_smooth_with_process(
    cfg: SmoothPriorConfig, rng: np.random.Generator
) -> tuple[GridDensity, np.ndarray]:
    """Draw one density and return the Gaussian process behind it.

    Draws are rejected until the density's smoothness radius fits inside
    twice the configured ball radius.
    """
    for attempt in range(cfg.max_rejections + 1):
        w = gp_draw(cfg, rng)
        density = _densify(w)
        if sobolev_radius(density, cfg.nu) <= 2.0 * cfg.radius:
            return density, w
    raise RejectionLimitError(cfg.max_rejections + 1)


def sample_smooth(cfg: SmoothPriorConfig, rng: np.random.Generator) -> GridDensity:
    """One draw of the smooth shift-density prior."""
    density, _ = sample_smooth_with_process(cfg, rng)
    return density


def parse_flat_config(path: str) -> dict:
    """Read a flat ``key = value`` text file; '#' starts a comment."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
