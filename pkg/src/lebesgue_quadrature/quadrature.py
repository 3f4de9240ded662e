"""Gaussian and Lebesgue quadratures built from pencil eigenpairs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import BasisSpec, PolynomialInBasis
from .density_matrix import moments_producing_polynomial
from .errors import DegreeTooHighError, InvalidArgumentError, NumericalError
from .gev import SpectralDecomposition, solve_pencil
from .moments import MomentSet, OperatorPair, cholesky_lower, gaussian_pair

WEIGHT_SELF_CHECK = 1e-8


@dataclass(frozen=True)
class LebesgueQuadrature:
    """Value-nodes f_i with weights w_i = <psi_i>^2.

    The decomposition is kept because weights for other integrands need the
    eigenvectors, not only the (node, weight) pairs.
    """

    value_nodes: np.ndarray
    weights: np.ndarray
    decomposition: SpectralDecomposition
    total_measure: float

    @property
    def n(self) -> int:
        return self.value_nodes.size


@dataclass(frozen=True)
class GaussianQuadrature:
    nodes: np.ndarray
    weights: np.ndarray
    decomposition: SpectralDecomposition | None = None

    def __call__(self, func) -> float:
        return float(np.sum(np.asarray(func(self.nodes), dtype=float) * self.weights))


def lebesgue_quadrature(pair: OperatorPair, mu_moments=None) -> LebesgueQuadrature:
    decomp = solve_pencil(pair)
    if mu_moments is None:
        mu = decomp.gram[0]
    else:
        mu = np.asarray(mu_moments, dtype=float)[: decomp.n]
    means = decomp.eigenvectors @ mu
    total = float(decomp.gram[0, 0])
    return LebesgueQuadrature(decomp.eigenvalues.copy(), means * means, decomp, total)


def gaussian_quadrature(moments: MomentSet) -> GaussianQuadrature:
    """Nodes are the eigenvalues of the f = x pencil.

    Weights come from <psi_i>^2 and are cross-checked against
    1 / psi_i(x_i)^2.
    """
    return gaussian_from_pair(gaussian_pair(moments))


def gaussian_from_pair(pair: OperatorPair) -> GaussianQuadrature:
    """Gaussian quadrature from an assembled (<Q|x|Q>, <Q|Q>) pencil."""
    decomp = solve_pencil(pair)
    nodes = decomp.eigenvalues.copy()
    means = decomp.means()
    weights = means * means
    at_nodes = np.einsum("ii->i", decomp.psi(nodes))
    alt = 1.0 / (at_nodes * at_nodes)
    mismatch = np.max(np.abs(alt - weights) / np.abs(weights))
    if not mismatch <= WEIGHT_SELF_CHECK:
        raise NumericalError(f"Gaussian weight self-check failed (relative mismatch {mismatch:.3g})")
    if np.any(np.diff(nodes) <= 0):
        raise NumericalError("Gaussian nodes are not distinct")
    return GaussianQuadrature(nodes, weights, decomp)


def integrate(quad: LebesgueQuadrature) -> float:
    """<f> as sum_i f_i w_i."""
    return float(quad.value_nodes @ quad.weights)


def weights_for_polynomial(quad: LebesgueQuadrature, P: PolynomialInBasis, mu_moments=None) -> np.ndarray:
    """Weights w_(P)_i = <psi_i|P|psi_i> with sum_i f_i w_(P)_i = <f P>.

    P may have degree up to 2n-2. The operator P is the measure-generated
    density matrix of P, so individual weights may be negative.
    """
    decomp = quad.decomposition
    if P.basis != decomp.basis:
        raise InvalidArgumentError("polynomial basis differs from the quadrature basis")
    if P.degree > 2 * decomp.n - 2:
        raise DegreeTooHighError(f"polynomial degree {P.degree} exceeds 2n-2 = {2 * decomp.n - 2}")
    gram_p = moments_producing_polynomial(P, decomp.gram).gram()
    return decomp.matrix_elements(gram_p)


def weights_for_low_degree_polynomial(quad: LebesgueQuadrature, P: PolynomialInBasis) -> np.ndarray:
    """<P|psi_i> <psi_i> for deg P <= n-1 (a different split of the same sums)."""
    decomp = quad.decomposition
    if P.degree > decomp.n - 1:
        raise DegreeTooHighError(f"polynomial degree {P.degree} exceeds n-1 = {decomp.n - 1}")
    p = np.zeros(decomp.n)
    p[: P.coefficients.size] = P.coefficients
    overlaps = decomp.eigenvectors @ (decomp.gram @ p)
    return overlaps * decomp.means()


@dataclass(frozen=True)
class VarianceDecomposition:
    residual: float
    per_component: np.ndarray
    mean: float
    centered_residual: float


def pca_variance_decomposition(quad: LebesgueQuadrature, f_second_moment: float) -> VarianceDecomposition:
    """Split <f^2> into eigenstate contributions plus the least squares residual."""
    f, w = quad.value_nodes, quad.weights
    total = quad.total_measure
    mean = float(f @ w) / total
    residual = float(f_second_moment - (f * f) @ w)
    per_component = (f - mean) ** 2 * w
    centered = float(f_second_moment - mean * mean * total - per_component.sum())
    return VarianceDecomposition(residual, per_component, mean, centered)


def christoffel_function(gram: np.ndarray, basis: BasisSpec, x, *, factor: np.ndarray | None = None):
    """K(x) = 1 / (Q(x)^T G^-1 Q(x)) via a triangular solve against chol(G)."""
    L = cholesky_lower(gram) if factor is None else factor
    n = L.shape[0]
    V = basis.vander(x, n)
    flat = V.reshape(-1, n)
    z = scipy.linalg.solve_triangular(L, flat.T, lower=True)
    values = (1.0 / np.sum(z * z, axis=0)).reshape(V.shape[:-1])
    return float(values) if np.ndim(values) == 0 else values
