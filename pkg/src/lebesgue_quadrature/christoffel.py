"""Eigenproblem with the Christoffel function as the observable, its density
matrix rho_K, and Christoffel weights <psi_i|K|psi_i> for any pencil."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec
from .density_matrix import DensityMatrix, DensitySource
from .errors import InvalidArgumentError
from .gev import SpectralDecomposition, solve_pencil
from .moments import OperatorPair, cholesky_lower, second_pass_matrix
from .quadrature import christoffel_function


@dataclass(frozen=True)
class ChristoffelSpectrum:
    decomposition: SpectralDecomposition
    rho_K: DensityMatrix

    @property
    def k_matrix(self) -> np.ndarray:
        """<Q_j|K(x)|Q_k>."""
        return self.rho_K.operator


def christoffel_matrix(samples, gram: np.ndarray, basis: BasisSpec, n: int) -> np.ndarray:
    """Second data pass: <Q_j|K|Q_k> with K evaluated per observation."""
    L = cholesky_lower(gram)
    return second_pass_matrix(samples, basis, n, lambda x: christoffel_function(gram, basis, x, factor=L))


def christoffel_pencil(samples, gram: np.ndarray, basis: BasisSpec, n: int) -> ChristoffelSpectrum:
    gram = np.asarray(gram, dtype=float)
    if gram.shape != (n, n):
        raise InvalidArgumentError("Gram matrix does not match the order n")
    K = christoffel_matrix(samples, gram, basis, n)
    decomp = solve_pencil(OperatorPair(basis, K, gram))
    return ChristoffelSpectrum(decomp, DensityMatrix(decomp, DensitySource.FROM_CHRISTOFFEL, K))


def christoffel_weights(target: SpectralDecomposition, spectrum: ChristoffelSpectrum) -> np.ndarray:
    """w_K_i = <psi_i|K|psi_i>; strictly positive, summing to the total measure."""
    if target.basis != spectrum.decomposition.basis or target.n != spectrum.decomposition.n:
        raise InvalidArgumentError("target pencil and Christoffel spectrum use different bases")
    ref = spectrum.decomposition.gram
    if not np.allclose(target.gram, ref, rtol=1e-10, atol=1e-10 * np.abs(ref).max()):
        raise InvalidArgumentError("target pencil and Christoffel spectrum use different Gram matrices")
    return target.matrix_elements(spectrum.k_matrix)
