"""D-point optimal clustering.

A Gaussian quadrature is built in f-space over the discrete measure
{(f_i, w_i)} of the eigenvalues and their (generalized) weights, then mapped
back to x-space as weight functions p_m(x) for Radon-Nikodym interpolation
and classification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import BasisKind, BasisSpec, PolynomialInBasis
from .density_matrix import DensityMatrix, DensitySource, pure_average
from .errors import (DegeneratePointError, InvalidArgumentError,
                     InvalidMeasureError, RankDeficientMeasureError)
from .gev import SpectralDecomposition
from .moments import OperatorPair
from .quadrature import gaussian_from_pair

SUPPORT_CUTOFF = 1e-12


@dataclass(frozen=True)
class ClusterModel:
    D: int
    cluster_values: np.ndarray
    cluster_weights: np.ndarray
    f_decomposition: SpectralDecomposition
    node_values: np.ndarray
    source_decomposition: SpectralDecomposition
    node_weights: np.ndarray
    rho: DensityMatrix
    rho_states: np.ndarray

    def f_polynomial(self, m: int) -> PolynomialInBasis:
        """psi_G_m as a polynomial in f."""
        return PolynomialInBasis(self.f_decomposition.basis, self.f_decomposition.eigenvectors[m])

    def operator_averages(self):
        """Spur averages over rho of Psi_m Psi_s, Psi_m f Psi_s and Psi_m.

        Psi_m = sum_i |psi_i> psi_G_m(f_i) <psi_i| is diagonal in the source
        eigenbasis, so only the diagonal of <psi_i|rho|psi_j> enters.
        """
        d = np.diag(self.rho_states)
        G = self.node_values
        f = self.source_decomposition.eigenvalues
        return (G * d) @ G.T, (G * (d * f)) @ G.T, G @ d


def cluster_measure(values, weights, D: int):
    """D-point Gaussian quadrature of the discrete measure {(values_i, weights_i)}."""
    f = np.asarray(values, dtype=float).ravel()
    weights = np.asarray(weights, dtype=float).ravel()
    if weights.shape != f.shape:
        raise InvalidArgumentError("one weight per value is required")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise InvalidMeasureError("cluster weights must be finite and nonnegative")
    if D < 1:
        raise InvalidArgumentError("cluster count D must be at least 1")
    # zero-weight nodes stay in the conversion sums but do not count as support
    support = weights > SUPPORT_CUTOFF * weights.sum()
    distinct = np.unique(f[support]).size
    if D > distinct:
        raise RankDeficientMeasureError(f"D={D} exceeds the {distinct} distinct supported value-nodes")

    return gaussian_from_pair(_discrete_pencil(f[support], weights[support], D))


def _discrete_pencil(f, w, D: int) -> OperatorPair:
    """(<Q|f|Q>, <Q|Q>) for the discrete measure in its own orthogonal basis.

    Householder tridiagonalization of the arrowhead matrix
    [[0, sqrt(w)^T], [sqrt(w), diag(t)]] keeps e_0 fixed, so the trailing
    block is the Jacobi matrix of the measure. The Q_k it defines (Q_0 = 1)
    have Gram matrix <1> I, whatever the spread of the values.
    """
    lo, hi = f.min(), f.max()
    shift, scale = 0.5 * (hi + lo), (0.5 * (hi - lo) or 1.0)
    t = (f - shift) / scale
    total = float(w.sum())
    arrow = np.zeros((t.size + 1, t.size + 1))
    arrow[0, 1:] = arrow[1:, 0] = np.sqrt(w)
    arrow[1:, 1:] = np.diag(t)
    H = scipy.linalg.hessenberg(arrow)
    b = np.diag(H)[1: D + 1]
    a = np.abs(np.diag(H, -1))[1:D]
    if np.any(a <= 1e-13 * max(1.0, np.abs(b).max())):
        raise RankDeficientMeasureError(f"value-node measure supports fewer than D={D} orthogonal states")
    recurrence = tuple(zip(np.concatenate(([0.0], a)), b))
    basis = BasisSpec(BasisKind.CUSTOM, recurrence, shift=shift, scale=scale)
    J = np.diag(b) + np.diag(a, 1) + np.diag(a, -1)
    eye = np.eye(D)
    return OperatorPair(basis, total * (shift * eye + scale * J), total * eye)


def build_clusters(decomp: SpectralDecomposition, weights, D: int,
                   rho: DensityMatrix | None = None) -> ClusterModel:
    weights = np.asarray(weights, dtype=float)
    if weights.shape != decomp.eigenvalues.shape:
        raise InvalidArgumentError("one weight per eigenvalue is required")
    quad = cluster_measure(decomp.eigenvalues, weights, D)
    fdec = quad.decomposition
    node_values = fdec.psi(decomp.eigenvalues).T
    if rho is None:
        rho = pure_average(decomp.gram, decomp.basis)
    return ClusterModel(D, quad.nodes, quad.weights, fdec, node_values, decomp, weights,
                        rho, rho.in_states(decomp))


def _weights_all(model: ClusterModel, x, method: str):
    psi = model.source_decomposition.psi(np.asarray(x, dtype=float))
    if method == "auto":
        method = "pure" if model.rho.source is DensitySource.PURE_AVERAGE else "general"
    if method == "pure":
        if model.rho.source is not DensitySource.PURE_AVERAGE:
            raise InvalidArgumentError("pure-state weights need the |1><1| density matrix")
        means = model.source_decomposition.means()
        amp = psi @ (model.node_values * means).T
        return amp * amp
    if method != "general":
        raise InvalidArgumentError(f"unknown method {method!r}")
    Y = psi[..., None, :] * model.node_values
    return np.einsum("...mi,ij,...mj->...m", Y, model.rho_states, Y)


def cluster_weight_at(model: ClusterModel, m: int, x, method: str = "auto"):
    """p_m(x); ``method`` selects the pure-state square or the general bilinear form."""
    if not 0 <= m < model.D:
        raise InvalidArgumentError("cluster index out of range")
    values = _weights_all(model, x, method)[..., m]
    return float(values) if np.ndim(values) == 0 else values


def _ratio(model, p, extra=None):
    if extra is not None:
        p = p * extra
    denom = p.sum(axis=-1)
    if np.any(denom == 0):
        raise DegeneratePointError("all cluster weight functions vanish at the point")
    values = (p @ model.cluster_values) / denom
    # a convex combination of the cluster values; clip away rounding spill
    values = np.clip(values, model.cluster_values.min(), model.cluster_values.max())
    return float(values) if np.ndim(values) == 0 else values


def rn_interpolate(model: ClusterModel, x, method: str = "auto"):
    return _ratio(model, _weights_all(model, x, method))


def rn_classify(model: ClusterModel, x, method: str = "auto"):
    """Like :func:`rn_interpolate` with each p_m scaled by the cluster weight."""
    return _ratio(model, _weights_all(model, x, method), model.cluster_weights)
