"""Density matrices: the operator whose diagonal reproduces a polynomial,
the regular average |1><1|, and traces of operator products against them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .basis import BasisSpec, PolynomialInBasis, multiplication_table
from .errors import DegenerateConstructionError, DegreeTooHighError, InvalidArgumentError
from .gev import SpectralDecomposition, solve_pencil
from .moments import OperatorPair, cholesky_lower


class DensitySource(str, Enum):
    FROM_POLYNOMIAL = "polynomial"
    FROM_CHRISTOFFEL = "christoffel"
    PURE_AVERAGE = "pure"


@dataclass(frozen=True)
class DensityMatrix:
    """rho = sum_i lambda_i |psi_i><psi_i|.

    ``operator`` is the matrix <Q_j|rho|Q_k> = (G A^T Lambda A G)_jk, so that
    <psi|rho|psi> = a^T operator a for a state with coefficients a.
    """

    decomposition: SpectralDecomposition
    source: DensitySource
    operator: np.ndarray

    @property
    def spur(self) -> float:
        return float(np.sum(self.decomposition.eigenvalues))

    def expectation(self, coefficients) -> np.ndarray:
        """<psi|rho|psi> for each row of ``coefficients``."""
        a = np.atleast_2d(coefficients)
        return np.einsum("ij,jk,ik->i", a, self.operator, a)

    def in_states(self, decomp: SpectralDecomposition) -> np.ndarray:
        """Matrix <psi_i|rho|psi_j> in the eigenbasis of another pencil."""
        if decomp.n != self.decomposition.n:
            raise InvalidArgumentError("dimension mismatch between density matrix and states")
        A = decomp.eigenvectors
        return A @ self.operator @ A.T


@dataclass(frozen=True)
class MeasureMomentsOfP:
    """Moments <Q_l>_P, l = 0..2n-2, of the measure generating a polynomial."""

    basis: BasisSpec
    moments: np.ndarray
    residual: float = 0.0

    def gram(self) -> np.ndarray:
        n = (self.moments.size + 1) // 2
        return np.einsum("jkl,l->jk", multiplication_table(self.basis, n), self.moments)


def _gram_inverse(gram):
    L = cholesky_lower(gram)
    return scipy.linalg.cho_solve((L, True), np.eye(gram.shape[0]))


def _padded(P: PolynomialInBasis, n: int) -> np.ndarray:
    if P.degree > 2 * n - 2:
        raise DegreeTooHighError(f"polynomial degree {P.degree} exceeds 2n-2 = {2 * n - 2}")
    gamma = np.zeros(2 * n - 1)
    gamma[: P.coefficients.size] = P.coefficients
    return gamma


def moments_producing_polynomial(P: PolynomialInBasis, gram: np.ndarray) -> MeasureMomentsOfP:
    """Solve the (2n-1)-dimensional system for the moments of the measure
    whose Gram matrix G_P satisfies ``P(x) = Q(x)^T G^-1 G_P G^-1 Q(x)``."""
    gram = np.asarray(gram, dtype=float)
    n = gram.shape[0]
    gamma = _padded(P, n)
    table = multiplication_table(P.basis, n)
    Ginv = _gram_inverse(gram)
    system = np.einsum("jkm,js,stl,tk->ml", table, Ginv, table, Ginv, optimize=True)
    try:
        moments = scipy.linalg.solve(system, gamma)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise DegenerateConstructionError(f"moment system is singular: {exc}") from None
    if not np.all(np.isfinite(moments)):
        raise DegenerateConstructionError("moment system produced non-finite moments")
    residual = float(np.linalg.norm(system @ moments - gamma))
    return MeasureMomentsOfP(P.basis, moments, residual)


def density_from_operator(operator, gram, basis: BasisSpec, source: DensitySource) -> DensityMatrix:
    operator = np.asarray(operator, dtype=float)
    decomp = solve_pencil(OperatorPair(basis, operator, gram))
    return DensityMatrix(decomp, source, operator)


def density_matrix_from_polynomial(P: PolynomialInBasis, gram: np.ndarray) -> DensityMatrix:
    """Density matrix with rho(x, x) = P(x), generated by a measure."""
    measure = moments_producing_polynomial(P, gram)
    return density_from_operator(measure.gram(), gram, P.basis, DensitySource.FROM_POLYNOMIAL)


def pure_average(gram: np.ndarray, basis: BasisSpec) -> DensityMatrix:
    """The regular average |1><1|: <psi|rho|psi> = <psi>^2."""
    mu = np.asarray(gram, dtype=float)[0]
    return density_from_operator(np.outer(mu, mu), gram, basis, DensitySource.PURE_AVERAGE)


def inverse_christoffel_polynomial(gram: np.ndarray, basis: BasisSpec) -> PolynomialInBasis:
    """1/K(x) = Q(x)^T G^-1 Q(x) expanded in the basis (degree 2n-2)."""
    n = gram.shape[0]
    gamma = np.einsum("jk,jkm->m", _gram_inverse(gram), multiplication_table(basis, n))
    return PolynomialInBasis(basis, gamma)


def reconstruct_diagonal(rho: DensityMatrix, x):
    """rho(x, x) = sum_i lambda_i psi_i(x)^2."""
    psi = rho.decomposition.psi(x)
    values = (psi * psi) @ rho.decomposition.eigenvalues
    return float(values) if np.ndim(values) == 0 else values


def spur_product(rho: DensityMatrix, operator) -> float:
    """Spur ||f|rho|| = sum_i lambda_i <psi_i|f|psi_i> over the states of rho."""
    F = operator.left if isinstance(operator, OperatorPair) else np.asarray(operator, dtype=float)
    if F.shape != rho.operator.shape:
        raise InvalidArgumentError("operator and density matrix differ in dimension")
    d = rho.decomposition
    return float(d.eigenvalues @ d.matrix_elements(F))
