"""Forward simulation of randomly shifted curves in the Fourier domain.

Each observed curve is the common shape shifted by a random amount and
corrupted by complex white noise; the first ``2L + 1`` Fourier
coefficients carry the model exactly, so that is what gets stored:
``y_{k,j} = theta_k e^{-i 2 pi k tau_j} + sigma xi_{k,j}``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .fourier import FourierSeries, project, rotate
from .shifts import ShiftDistribution, sample
from .special import complex_gaussian_array

__all__ = ["ObservationSet", "DatasetFormatError", "simulate", "save", "load"]


class DatasetFormatError(ValueError):
    """Raised when a dataset file is malformed; names the offending field."""

    def __init__(self, fieldname: str, message: str):
        self.fieldname = fieldname
        super().__init__(f"field '{fieldname}': {message}")


@dataclass
class ObservationSet:
    """A batch of simulated curves as noisy rotated coefficient vectors.

    Attributes
    ----------
    cutoff : int
        Observation frequency cap ``L``; each row has ``2L + 1`` entries.
    sigma : float
        Noise level (the model's default is 1).
    curves : np.ndarray
        Complex matrix of shape ``(n, 2L + 1)``.
    true_shifts : np.ndarray or None
        The shifts that generated the rows, kept for diagnostics.
    seed : int or None
        RNG seed recorded for reproducibility.
    """

    cutoff: int
    sigma: float
    curves: np.ndarray = field(repr=False)
    true_shifts: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        arr = np.asarray(self.curves, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] != 2 * self.cutoff + 1:
            raise ValueError(
                f"curves must have shape (n, {2 * self.cutoff + 1}), got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("curve coefficients must be finite")
        self.curves = arr
        if self.true_shifts is not None:
            ts = np.asarray(self.true_shifts, dtype=float)
            if ts.shape != (arr.shape[0],):
                raise ValueError("true_shifts length must match the number of curves")
            self.true_shifts = ts

    @property
    def n(self) -> int:
        return self.curves.shape[0]


def simulate(
    theta0: FourierSeries,
    g0: ShiftDistribution,
    n: int,
    cutoff: int,
    sigma: float = 1.0,
    seed: int = 0,
) -> ObservationSet:
    """Draw ``n`` curves from the shifted-curve model.

    Curve ``j`` consumes an RNG substream spawned deterministically from
    ``(seed, j)``, so simulating a prefix of the curves, or simulating
    them in parallel, reproduces the exact same values.
    """
    if n < 1:
        raise ValueError("need at least one curve")
    if sigma < 0:
        raise ValueError("noise level must be nonnegative")
    theta_l = project(theta0, cutoff)
    children = np.random.SeedSequence(seed).spawn(n)
    p = 2 * cutoff + 1
    curves = np.empty((n, p), dtype=complex)
    shifts = np.empty(n)
    for j, child in enumerate(children):
        rng = np.random.default_rng(child)
        tau = sample(g0, 1, rng)[0]
        shifts[j] = tau
        row = rotate(theta_l, tau).coeffs
        if sigma > 0:
            row = row + sigma * complex_gaussian_array(rng, p)
        curves[j] = row
    return ObservationSet(cutoff, sigma, curves, true_shifts=shifts, seed=seed)


def save(obs: ObservationSet, path: str) -> None:
    """Serialize to JSON; the written file round-trips bit-faithfully."""
    doc = {
        "n": obs.n,
        "cutoff": obs.cutoff,
        "sigma": obs.sigma,
        "seed": obs.seed,
        "curves": [
            [[float(c.real), float(c.imag)] for c in row] for row in obs.curves
        ],
        "true_shifts": None
        if obs.true_shifts is None
        else [float(t) for t in obs.true_shifts],
    }
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def load(path: str) -> ObservationSet:
    """Read a dataset written by :func:`save`, validating every field."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DatasetFormatError("<file>", f"not valid JSON: {exc}") from exc
    for key in ("n", "cutoff", "sigma", "curves"):
        if key not in doc:
            raise DatasetFormatError(key, "missing")
    try:
        n = int(doc["n"])
        cutoff = int(doc["cutoff"])
        sigma = float(doc["sigma"])
    except (TypeError, ValueError) as exc:
        raise DatasetFormatError("n/cutoff/sigma", str(exc)) from exc
    rows = doc["curves"]
    if not isinstance(rows, list) or len(rows) != n:
        raise DatasetFormatError("curves", f"expected {n} rows")
    width = 2 * cutoff + 1
    curves = np.empty((n, width), dtype=complex)
    for j, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise DatasetFormatError("curves", f"row {j} must have {width} entries")
        try:
            curves[j] = [complex(re, im) for re, im in row]
        except (TypeError, ValueError) as exc:
            raise DatasetFormatError("curves", f"row {j}: {exc}") from exc
    shifts = doc.get("true_shifts")
    if shifts is not None:
        if not isinstance(shifts, list) or len(shifts) != n:
            raise DatasetFormatError("true_shifts", f"expected {n} entries")
        shifts = np.asarray(shifts, dtype=float)
    seed = doc.get("seed")
    try:
        return ObservationSet(
            cutoff,
            sigma,
            curves,
            true_shifts=shifts,
            seed=None if seed is None else int(seed),
        )
    except ValueError as exc:
        raise DatasetFormatError("curves", str(exc)) from exc
