"""Finite-dimensional mixture laws of rotated Gaussian vectors.

A shape ``theta`` (cutoff ``l``) and a shift distribution ``g`` induce
the location mixture ``p(z) = int gamma(z - theta . phi) dg(phi)`` on
``C^p``: ``gamma(z) = pi^{-p} e^{-||z||^2}`` and ``(theta . phi)_k =
theta_k e^{-i 2 pi k phi}``.  A law may be restricted to a subset of
frequencies, which realizes single-coordinate marginals and small joint
blocks without changing the machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import FourierSeries, h1_norm, project
from .model import ObservationSet
from .shifts import (
    Discrete,
    FourierDensity,
    GridDensity,
    ShiftDistribution,
    sample as sample_shift,
)
from .special import complex_gaussian_array

__all__ = [
    "MixtureLaw",
    "gaussian_density",
    "log_gaussian_density",
    "mixture_density",
    "log_mixture_density",
    "log_likelihood",
    "girsanov_log_ratio",
    "sample_law",
]

_MIN_QUAD = 64


def default_quadrature_points(theta: FourierSeries) -> int:
    """Grid size for the shift integral: ``max(512, 64 ceil(||theta||_H1))``.

    The integrand sharpens as the shape's first-order norm grows, so the
    resolution scales with it.
    """
    return max(512, _MIN_QUAD * math.ceil(h1_norm(theta)))


@dataclass(frozen=True)
class MixtureLaw:
    """Law of the observed coefficient vector for one curve.

    Parameters
    ----------
    theta : FourierSeries
        Shape coefficients (cutoff ``l``).
    g : ShiftDistribution
        Mixing distribution of the random shift.
    quadrature_points : int, optional
        Shift-grid resolution for continuous ``g``; defaults to the
        norm-scaled rule.
    freqs : tuple of int, optional
        Active frequency subset; ``None`` means all of ``-l .. l``.
    """

    theta: FourierSeries
    g: ShiftDistribution
    quadrature_points: int | None = None
    freqs: tuple | None = None

    def __post_init__(self):
        if self.quadrature_points is not None and self.quadrature_points < _MIN_QUAD:
            raise ValueError(f"quadrature_points must be >= {_MIN_QUAD}")
        if self.freqs is not None:
            freqs = tuple(int(k) for k in self.freqs)
            if any(abs(k) > self.theta.cutoff for k in freqs):
                raise ValueError("active frequency beyond the shape cutoff")
            object.__setattr__(self, "freqs", freqs)

    @property
    def active_freqs(self) -> np.ndarray:
        if self.freqs is not None:
            return np.asarray(self.freqs, dtype=int)
        return self.theta.ks

    @property
    def dim(self) -> int:
        """Complex dimension ``p`` of the observed vector."""
        return self.active_freqs.size


def _shift_nodes(law: MixtureLaw):
    """Quadrature nodes and weights for the shift integral.

    Atoms are used exactly; densities are sampled on a uniform circle
    grid with weights ``g(phi_i) / K`` (the periodic trapezoid rule).
    """
    g = law.g
    if isinstance(g, Discrete):
        return g.positions, g.weights
    if isinstance(g, FourierDensity):
        g = g.to_grid()
    if isinstance(g, GridDensity):
        k = law.quadrature_points or default_quadrature_points(law.theta)
        phi = np.arange(k) / k
        vals = np.interp(phi, g.grid, g.values)
        w = vals / k
        s = w.sum()
        if s <= 0:
            raise ValueError("degenerate shift density")
        return phi, w / s
    raise TypeError(f"unsupported shift distribution {type(g)!r}")


def _means(law: MixtureLaw, phi: np.ndarray) -> np.ndarray:
    """Matrix of mixture means ``(theta . phi_i)_k``, shape (K, p)."""
    ks = law.active_freqs
    coeffs = law.theta.coeffs[ks + law.theta.cutoff]
    return coeffs[None, :] * np.exp(-2j * np.pi * np.outer(phi, ks))


def log_gaussian_density(z: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Log of ``gamma(z - mu) = pi^{-p} exp(-||z - mu||^2)``, row-wise."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    mu = np.asarray(mu, dtype=complex)
    if z.shape[-1] != mu.shape[-1]:
        raise ValueError("dimension mismatch between point and mean")
    p = z.shape[-1]
    sq = np.sum(np.abs(z - mu) ** 2, axis=-1)
    return -p * math.log(math.pi) - sq


def gaussian_density(z, mu) -> float | np.ndarray:
    """Standard complex Gaussian density ``pi^{-p} exp(-||z - mu||^2)``."""
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim <= 1
    out = np.exp(log_gaussian_density(z_arr, np.asarray(mu, dtype=complex)))
    if scalar:
        return float(out[0])
    return out


def log_mixture_density(law: MixtureLaw, z: np.ndarray) -> np.ndarray:
    """Log mixture density at the rows of ``z`` (shape (N, p) or (p,)).

    Stabilized by factoring the largest exponent out of the shift sum.
    """
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    if z.shape[1] != law.dim:
        raise ValueError(f"points must have dimension {law.dim}, got {z.shape[1]}")
    phi, w = _shift_nodes(law)
    mu = _means(law, phi)
    logw = np.full(w.shape, -np.inf)
    pos = w > 0
    logw[pos] = np.log(w[pos])
    p = law.dim
    out = np.empty(z.shape[0])
    # chunk the (N, K) exponent matrix to bound memory
    chunk = max(1, int(4e6) // max(1, phi.size))
    mu_sq = np.sum(np.abs(mu) ** 2, axis=1)
    for lo in range(0, z.shape[0], chunk):
        zz = z[lo : lo + chunk]
        cross = zz @ mu.conj().T
        expo = (
            -(np.sum(np.abs(zz) ** 2, axis=1)[:, None] + mu_sq[None, :])
            + 2.0 * cross.real
            + logw[None, :]
        )
        m = np.max(expo, axis=1)
        out[lo : lo + chunk] = m + np.log(np.sum(np.exp(expo - m[:, None]), axis=1))
    return out - p * math.log(math.pi)


def mixture_density(law: MixtureLaw, z) -> float | np.ndarray:
    """Mixture density ``int gamma(z - theta . phi) dg(phi)`` at ``z``."""
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim <= 1
    out = np.exp(log_mixture_density(law, z_arr))
    if scalar:
        return float(out[0])
    return out


def log_likelihood(law: MixtureLaw, obs: ObservationSet) -> float:
    """Joint log density of the curves under the law.

    Evaluated at the common frequency window ``|k| <= min(l, L)``:
    observed coefficients beyond the shape cutoff would contribute
    pure-noise factors identical for every shape of that cutoff and are
    dropped, while a shape cutoff above ``L`` is truncated, which is the
    exact marginalization onto the observed window.
    """
    if law.freqs is not None:
        raise ValueError("likelihood expects a full-window law")
    if obs.n == 0:
        return 0.0
    m = min(law.theta.cutoff, obs.cutoff)
    sub = MixtureLaw(project(law.theta, m), law.g, law.quadrature_points)
    z = obs.curves[:, obs.cutoff - m : obs.cutoff + m + 1]
    return float(np.sum(log_mixture_density(sub, z)))


def _log_shift_integral(law: MixtureLaw, y: np.ndarray) -> float:
    """``log int exp(2 Re<theta . phi, y> - ||theta||^2) dg(phi)``."""
    phi, w = _shift_nodes(law)
    mu = _means(law, phi)
    expo = 2.0 * (mu.conj() @ y).real - np.sum(np.abs(law.theta.coeffs) ** 2)
    logw = np.full(w.shape, -np.inf)
    pos = w > 0
    logw[pos] = np.log(w[pos])
    expo = expo + logw
    m = float(np.max(expo))
    return m + math.log(float(np.sum(np.exp(expo - m))))


def girsanov_log_ratio(f: MixtureLaw, f0: MixtureLaw, y: np.ndarray) -> float:
    """Log likelihood ratio of two mixture laws at one observed vector.

    Computed as the log ratio of the two shift integrals of
    ``exp(2 Re<theta . phi, y> - ||theta||^2)``; the Gaussian base factor
    ``pi^{-p} e^{-||y||^2}`` is common to both laws and cancels, so the
    value equals the difference of log mixture densities at the common
    cutoff (the larger of the two, with zero padding).
    """
    if f.freqs is not None or f0.freqs is not None:
        raise ValueError("likelihood ratio expects full-window laws")
    cut = max(f.theta.cutoff, f0.theta.cutoff)
    y = np.asarray(y, dtype=complex)
    if y.shape != (2 * cut + 1,):
        raise ValueError(f"observation must have dimension {2 * cut + 1}")
    num = MixtureLaw(project(f.theta, cut), f.g, f.quadrature_points)
    den = MixtureLaw(project(f0.theta, cut), f0.g, f0.quadrature_points)
    return _log_shift_integral(num, y) - _log_shift_integral(den, y)


def sample_law(law: MixtureLaw, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` vectors from the law: rotate by a shift, add noise."""
    phi = sample_shift(law.g, size, rng)
    means = _means(law, phi)
    return means + complex_gaussian_array(rng, means.shape)
