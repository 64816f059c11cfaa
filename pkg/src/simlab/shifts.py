"""Probability distributions of random shifts on the circle [0, 1).

Three interchangeable representations: a finite atomic measure, a density
tabulated on a uniform closed grid, and a truncated Fourier coefficient
vector.  Coefficients follow the convention
``c_k(g) = int_0^1 e^{-i 2 pi k phi} dg(phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShiftDistribution",
    "Discrete",
    "GridDensity",
    "FourierDensity",
    "fourier_coeff",
    "wasserstein1",
    "tv_density",
    "sobolev_radius",
    "in_class",
    "sample",
    "discretize",
    "uniform_density",
    "raised_cosine_density",
    "shift_to_json",
    "shift_from_json",
]

DEFAULT_GRID = 1024
_WEIGHT_TOL = 1e-12
_MASS_TOL = 1e-9
_NEG_TOL = 1e-9


class ShiftDistribution:
    """Common base for the three shift-distribution representations."""


@dataclass(frozen=True)
class Discrete(ShiftDistribution):
    """Finite atomic measure: positions in [0, 1) with nonnegative weights."""

    positions: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if pos.ndim != 1 or pos.shape != w.shape:
            raise ValueError("positions and weights must be 1-d arrays of equal length")
        if np.any((pos < 0.0) | (pos >= 1.0)):
            raise ValueError("positions must lie in [0, 1)")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > _WEIGHT_TOL:
            raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
        order = np.argsort(pos, kind="stable")
        object.__setattr__(self, "positions", pos[order])
        object.__setattr__(self, "weights", w[order])

    @staticmethod
    def point_mass(a: float) -> "Discrete":
        return Discrete(np.array([a]), np.array([1.0]))


@dataclass(frozen=True)
class GridDensity(ShiftDistribution):
    """Density on the closed uniform grid ``t_i = i/m, i = 0..m``.

    The first and last values describe the same circle point; the
    trapezoid integral over [0, 1] must equal 1.
    """

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 3:
            raise ValueError("grid density needs at least 3 closed-grid values")
        if np.any(v < -_NEG_TOL):
            raise ValueError("density values must be nonnegative")
        v = np.clip(v, 0.0, None)
        mass = np.trapezoid(v, dx=1.0 / (v.size - 1))
        if abs(mass - 1.0) > _MASS_TOL:
            raise ValueError(f"density must integrate to 1, got {mass!r}")
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        """Number of grid intervals."""
        return self.values.size - 1

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.values.size)

    def cdf_values(self) -> np.ndarray:
        """Trapezoid CDF on the closed grid, pinned to exactly [0, 1]."""
        h = 1.0 / self.m
        inc = 0.5 * h * (self.values[1:] + self.values[:-1])
        cdf = np.concatenate([[0.0], np.cumsum(inc)])
        cdf /= cdf[-1]
        return cdf


@dataclass(frozen=True)
class FourierDensity(ShiftDistribution):
    """Truncated coefficient vector ``c_k, |k| <= K`` of a density.

    Requires ``c_0 = 1`` and Hermitian symmetry; the synthesized density
    must be nonnegative up to a small rounding tolerance.
    """

    coeffs: np.ndarray = field(repr=False)
    validate: bool = True

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coefficients must have odd length (k = -K..K)")
        object.__setattr__(self, "coeffs", c)
        if not self.validate:
            return
        k0 = c.size // 2
        if abs(c[k0] - 1.0) > _WEIGHT_TOL:
            raise ValueError("c_0 must equal 1")
        if np.max(np.abs(c[::-1].conj() - c)) > 1e-9:
            raise ValueError("coefficients must be Hermitian (c_{-k} = conj(c_k))")
        if float(np.min(self.reconstruct())) < -_NEG_TOL:
            raise ValueError("reconstructed density is negative beyond tolerance")

    @property
    def k_max(self) -> int:
        return self.coeffs.size // 2

    def reconstruct(self, m: int = DEFAULT_GRID) -> np.ndarray:
        """Density values on the closed m-grid via Fourier synthesis."""
        t = np.linspace(0.0, 1.0, m + 1)
        ks = np.arange(-self.k_max, self.k_max + 1)
        vals = np.exp(2j * np.pi * np.outer(t, ks)) @ self.coeffs
        return vals.real

    def to_grid(self, m: int = DEFAULT_GRID) -> GridDensity:
        vals = self.reconstruct(m)
        if float(vals.min()) < -_NEG_TOL:
            raise ValueError("reconstructed density is negative beyond tolerance")
        return GridDensity(np.clip(vals, 0.0, None))


def uniform_density(m: int = DEFAULT_GRID) -> GridDensity:
    return GridDensity(np.ones(m + 1))


def raised_cosine_density(m: int = DEFAULT_GRID, amplitude: float = 1.0) -> GridDensity:
    """Density ``1 + amplitude * cos(2 pi x)`` for ``|amplitude| <= 1``."""
    if abs(amplitude) > 1.0:
        raise ValueError("amplitude must lie in [-1, 1]")
    t = np.linspace(0.0, 1.0, m + 1)
    return GridDensity(1.0 + amplitude * np.cos(2.0 * np.pi * t))


def fourier_coeff(g: ShiftDistribution, k: int):
    """Coefficient ``c_k(g) = int e^{-i 2 pi k phi} dg(phi)``.

    Exact sum for atoms, trapezoid quadrature for grids, direct lookup
    (zero beyond the truncation) for coefficient vectors.  Vectorizes
    over an array of frequencies.
    """
    ks = np.asarray(k)
    if isinstance(g, Discrete):
        phases = np.exp(-2j * np.pi * np.multiply.outer(ks, g.positions))
        out = phases @ g.weights
    elif isinstance(g, GridDensity):
        t = g.grid
        integrand = np.exp(-2j * np.pi * np.multiply.outer(ks, t)) * g.values
        out = np.trapezoid(integrand, t, axis=-1)
    elif isinstance(g, FourierDensity):
        flat = np.atleast_1d(ks)
        out = np.zeros(flat.shape, dtype=complex)
        inside = np.abs(flat) <= g.k_max
        out[inside] = g.coeffs[flat[inside] + g.k_max]
        out = out.reshape(ks.shape)
    else:
        raise TypeError(f"unsupported shift distribution {type(g)!r}")
    if ks.ndim == 0:
        return complex(out)
    return out


def _quantile_fn(g: ShiftDistribution):
    """Return ``u -> G^{-1}(u)`` with ``G^{-1}(u) = inf{t : g((0, t]) > u}``."""
    if isinstance(g, Discrete):
        cum = np.cumsum(g.weights)

        def inv(u):
            idx = np.searchsorted(cum, np.asarray(u), side="right")
            idx = np.minimum(idx, g.positions.size - 1)
            return g.positions[idx]

        return inv
    if isinstance(g, FourierDensity):
        g = g.to_grid()
    if isinstance(g, GridDensity):
        cdf = g.cdf_values()
        t = g.grid
        # np.interp on a nondecreasing CDF realizes the right-continuous
        # generalized inverse up to grid resolution.
        return lambda u: np.interp(np.asarray(u), cdf, t)
    raise TypeError(f"unsupported shift distribution {type(g)!r}")


def wasserstein1(
    g: ShiftDistribution, g_tilde: ShiftDistribution, u_points: int = 4096
) -> float:
    """Order-1 transport distance ``int_0^1 |G^{-1}(u) - Gt^{-1}(u)| du``.

    Midpoint quadrature over ``u`` with a configurable resolution.
    """
    inv_a = _quantile_fn(g)
    inv_b = _quantile_fn(g_tilde)
    u = (np.arange(u_points) + 0.5) / u_points
    return float(np.mean(np.abs(inv_a(u) - inv_b(u))))


def _common_grids(g: ShiftDistribution, g_tilde: ShiftDistribution):
    kinds = (g, g_tilde)
    if any(isinstance(x, Discrete) for x in kinds):
        raise TypeError("density-based distance needs grid or Fourier inputs")
    out = []
    m = max(
        x.m if isinstance(x, GridDensity) else DEFAULT_GRID for x in kinds
    )
    for x in kinds:
        if isinstance(x, FourierDensity):
            x = x.to_grid(m)
        if x.m != m:
            t = np.linspace(0.0, 1.0, m + 1)
            x = GridDensity(np.interp(t, x.grid, x.values))
        out.append(x)
    return out


def tv_density(g: ShiftDistribution, g_tilde: ShiftDistribution) -> float:
    """Total variation ``(1/2) int |g - g_tilde|``.

    Atom pairs are handled exactly; otherwise both sides are reduced to a
    common grid and integrated by the trapezoid rule.
    """
    if isinstance(g, Discrete) and isinstance(g_tilde, Discrete):
        support = np.union1d(g.positions, g_tilde.positions)
        wa = np.zeros(support.size)
        wb = np.zeros(support.size)
        np.add.at(wa, np.searchsorted(support, g.positions), g.weights)
        np.add.at(wb, np.searchsorted(support, g_tilde.positions), g_tilde.weights)
        return float(0.5 * np.sum(np.abs(wa - wb)))
    ga, gb = _common_grids(g, g_tilde)
    return float(0.5 * np.trapezoid(np.abs(ga.values - gb.values), ga.grid))


def sobolev_radius(g: ShiftDistribution, nu: float) -> float:
    """Smoothness radius ``sqrt(sum_{k != 0} k^{2 nu} |c_k(g)|^2)``.

    Grid densities are transformed up to ``K = m/2``; coefficient vectors
    use their stored truncation.
    """
    if nu < 0.5:
        raise ValueError("regularity must satisfy nu >= 1/2")
    if isinstance(g, FourierDensity):
        k_max = g.k_max
    elif isinstance(g, GridDensity):
        k_max = g.m // 2
    elif isinstance(g, Discrete):
        raise TypeError("atomic measures have no finite smoothness radius")
    else:
        raise TypeError(f"unsupported shift distribution {type(g)!r}")
    ks = np.arange(1, k_max + 1)
    coeffs = fourier_coeff(g, ks)
    total = 2.0 * np.sum(ks ** (2.0 * nu) * np.abs(coeffs) ** 2)
    return float(np.sqrt(total))


def in_class(g: ShiftDistribution, nu: float, radius: float) -> bool:
    """Whether ``g`` lies in the smoothness-``nu`` ball of the given radius."""
    return sobolev_radius(g, nu) < radius


def sample(g: ShiftDistribution, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` i.i.d. draws from ``g``; deterministic given the rng state."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if isinstance(g, Discrete):
        idx = rng.choice(g.positions.size, size=count, p=g.weights / g.weights.sum())
        return g.positions[idx]
    inv = _quantile_fn(g)
    return np.asarray(inv(rng.uniform(0.0, 1.0, count)), dtype=float)


def discretize(g: ShiftDistribution, atom_count: int) -> Discrete:
    """Equal-mass quantization at the quantiles ``(2i - 1) / (2 J)``.

    Duplicate quantile positions are consolidated so point masses map to
    themselves.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be at least 1")
    inv = _quantile_fn(g)
    u = (2.0 * np.arange(1, atom_count + 1) - 1.0) / (2.0 * atom_count)
    pos = np.asarray(inv(u), dtype=float)
    uniq, inverse = np.unique(pos, return_inverse=True)
    w = np.zeros(uniq.size)
    np.add.at(w, inverse, 1.0 / atom_count)
    return Discrete(uniq, w)


def shift_to_json(g: ShiftDistribution) -> dict:
    """JSON form with a ``kind`` discriminator mirroring the three variants."""
    if isinstance(g, Discrete):
        return {
            "kind": "discrete",
            "atoms": [[float(p), float(w)] for p, w in zip(g.positions, g.weights)],
        }
    if isinstance(g, GridDensity):
        return {"kind": "grid", "values": [float(v) for v in g.values]}
    if isinstance(g, FourierDensity):
        return {
            "kind": "fourier",
            "coeffs": [[float(c.real), float(c.imag)] for c in g.coeffs],
        }
    raise TypeError(f"unsupported shift distribution {type(g)!r}")


def shift_from_json(obj: dict) -> ShiftDistribution:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("shift distribution JSON must contain 'kind'")
    kind = obj["kind"]
    if kind == "discrete":
        atoms = np.asarray(obj["atoms"], dtype=float)
        return Discrete(atoms[:, 0], atoms[:, 1])
    if kind == "grid":
        return GridDensity(np.asarray(obj["values"], dtype=float))
    if kind == "fourier":
        coeffs = np.array([complex(re, im) for re, im in obj["coeffs"]])
        return FourierDensity(coeffs)
    raise ValueError(f"unknown shift distribution kind {kind!r}")
