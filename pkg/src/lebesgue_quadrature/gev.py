"""Symmetric-definite generalized eigenproblem ``F a = lambda G a``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import BasisSpec
from .errors import InvalidArgumentError, InvalidMatrixError
from .moments import OperatorPair, cholesky_lower

SYMMETRY_TOL = 1e-12
ZERO_MEAN_TOL = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a pencil.

    ``eigenvectors[i]`` holds the coefficients of psi_i in the basis; the
    vectors are G-orthonormal. ``gram`` is the right-hand matrix G.
    """

    basis: BasisSpec
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    gram: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def psi(self, x) -> np.ndarray:
        """psi_i(x) for all i; shape ``x.shape + (n,)``."""
        return self.basis.vander(x, self.n) @ self.eigenvectors.T

    def means(self) -> np.ndarray:
        """<psi_i> for all i (Q_0 = 1, so <Q_k> is the first Gram row)."""
        return self.eigenvectors @ self.gram[0]

    def matrix_elements(self, operator: np.ndarray) -> np.ndarray:
        """Diagonal <psi_i|op|psi_i> of an operator given in the Q basis."""
        return np.einsum("ij,jk,ik->i", self.eigenvectors, operator, self.eigenvectors)


def _check_symmetric(name, m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"{name} matrix must be square")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrixError(f"{name} matrix has non-finite entries")
    scale = np.max(np.abs(m)) if m.size else 0.0
    if np.max(np.abs(m - m.T), initial=0.0) > SYMMETRY_TOL * scale:
        raise InvalidMatrixError(f"{name} matrix is not symmetric")
    return m


def solve_pencil(pair: OperatorPair) -> SpectralDecomposition:
    """Cholesky reduction G = L L^T, symmetric eigensolve, back-transform.

    Eigenvalues ascend. Each eigenvector is signed so that <psi_i> >= 0; when
    <psi_i> vanishes the first nonzero coefficient is made positive.
    """
    F = _check_symmetric("left", pair.left)
    G = _check_symmetric("right", pair.right)
    if F.shape != G.shape:
        raise InvalidArgumentError("pencil matrices differ in shape")
    L = cholesky_lower(G)
    Y = scipy.linalg.solve_triangular(L, F, lower=True)
    S = scipy.linalg.solve_triangular(L, Y.T, lower=True)
    lam, V = np.linalg.eigh(0.5 * (S + S.T))
    alpha = scipy.linalg.solve_triangular(L.T, V, lower=False).T

    means = alpha @ G[0]
    cutoff = ZERO_MEAN_TOL * np.sqrt(abs(G[0, 0]))
    for i in range(lam.size):
        if abs(means[i]) > cutoff:
            flip = means[i] < 0
        else:
            nz = np.flatnonzero(np.abs(alpha[i]) > ZERO_MEAN_TOL * np.abs(alpha[i]).max())
            flip = nz.size > 0 and alpha[i, nz[0]] < 0
        if flip:
            alpha[i] = -alpha[i]
    return SpectralDecomposition(pair.basis, lam, alpha, G)


def mean_of_state(decomp: SpectralDecomposition, i: int, mu_moments=None) -> float:
    """<psi_i> = sum_k alpha_k <Q_k>."""
    if not 0 <= i < decomp.n:
        raise InvalidArgumentError("state index out of range")
    mu = decomp.gram[0] if mu_moments is None else np.asarray(mu_moments, dtype=float)[: decomp.n]
    return float(decomp.eigenvectors[i] @ mu)
