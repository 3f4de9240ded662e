"""Radon-Nikodym derivative estimates as eigenvalues averaged with
nonnegative weights; all of them stay inside the spectrum's range."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateStateError, InvalidArgumentError, PositiveSpectrumRequiredError
from .gev import SpectralDecomposition

TINY_WEIGHT = 1e-300


def _scalar_or_array(values):
    return float(values) if np.ndim(values) == 0 else values


def _bounded(decomp, values):
    # convex combinations of the eigenvalues; clip away rounding spill
    return _scalar_or_array(np.clip(values, decomp.eigenvalues.min(), decomp.eigenvalues.max()))


def _psi_squared(decomp: SpectralDecomposition, x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("x must be finite")
    psi = decomp.psi(x)
    return psi * psi


def rn_nevai(decomp: SpectralDecomposition, x):
    """sum_i lambda_i psi_i(x)^2 / sum_i psi_i(x)^2."""
    p2 = _psi_squared(decomp, x)
    return _bounded(decomp, (p2 @ decomp.eigenvalues) / p2.sum(axis=-1))


def _spectrum_powers(lam, gamma, p2):
    """Numerator and denominator weights lambda^gamma, lambda^(gamma-1)."""
    integral = float(gamma).is_integer()
    if not integral and np.any(lam < 0):
        raise PositiveSpectrumRequiredError(
            f"gamma={gamma} needs a nonnegative spectrum; min eigenvalue {lam.min():.6g}")
    num_pow = np.empty_like(lam)
    den_pow = np.empty_like(lam)
    zero = lam == 0
    nz = ~zero
    num_pow[nz] = lam[nz] ** gamma
    den_pow[nz] = lam[nz] ** (gamma - 1)
    if np.any(zero):
        if gamma - 1 >= 0:
            num_pow[zero] = 1.0 if gamma == 0 else 0.0
            den_pow[zero] = 1.0 if gamma == 1 else 0.0
        else:
            # lambda^(gamma-1) is infinite: admissible only if the state carries no weight
            if np.any(p2[..., zero] >= TINY_WEIGHT):
                raise PositiveSpectrumRequiredError(f"gamma={gamma} with a zero eigenvalue in the spectrum")
            num_pow[zero] = 0.0
            den_pow[zero] = 0.0
    return num_pow, den_pow


def rn_gamma(decomp: SpectralDecomposition, x, gamma: float):
    """sum lambda^gamma psi^2 / sum lambda^(gamma-1) psi^2, -1 <= gamma <= 1."""
    if not -1.0 <= gamma <= 1.0:
        raise InvalidArgumentError("gamma must lie in [-1, 1]")
    p2 = _psi_squared(decomp, x)
    num_pow, den_pow = _spectrum_powers(decomp.eigenvalues, gamma, p2)
    return _bounded(decomp, (p2 @ num_pow) / (p2 @ den_pow))


def state_projections(decomp: SpectralDecomposition, q) -> np.ndarray:
    """sum_k alpha_ik q_k for every eigenstate i."""
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != decomp.n:
        raise InvalidArgumentError(f"state moments must have length n = {decomp.n}")
    return q @ decomp.eigenvectors.T


def rn_distributed(decomp: SpectralDecomposition, q):
    """Estimate for a distributed state with basis moments q_k.

    q_k = Q_k(x) gives the localized estimate at x.
    """
    proj = state_projections(decomp, q)
    weights = proj * proj
    denom = weights.sum(axis=-1)
    if np.any(denom == 0):
        raise DegenerateStateError("state has zero projection on every eigenvector")
    return _bounded(decomp, (weights @ decomp.eigenvalues) / denom)


def bag_moments(decomp: SpectralDecomposition, xs, weights=None) -> np.ndarray:
    """Average of Q_k over a bag of x observations."""
    V = decomp.basis.vander(np.asarray(xs, dtype=float), decomp.n)
    return np.average(V, axis=0, weights=weights)
