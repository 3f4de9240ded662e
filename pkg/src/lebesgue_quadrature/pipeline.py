"""Sample table to spectrum: basis fitting, f transforms and the two data passes."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import BasisSpec
from .christoffel import ChristoffelSpectrum, christoffel_pencil, christoffel_weights
from .errors import DataError, InvalidArgumentError
from .formats import Spectrum
from .moments import (MomentSet, OperatorPair, SampleTable, accumulate_moments, gram_from_moments,
                      matrices_from_moments, x_matrix)
from .quadrature import LebesgueQuadrature, christoffel_function, lebesgue_quadrature


class FMode(str, Enum):
    COLUMN = "column"
    DERIVATIVE_DX = "derivative-dx"
    CHRISTOFFEL = "christoffel"


def derivative_samples(table: SampleTable) -> SampleTable:
    """f -> df/dx over the x-sorted sample with measure dx.

    Centered differences inside, one-sided at the ends; the weights are the
    trapezoid cell widths, so the total measure is the x-range.
    """
    order = np.argsort(table.x, kind="stable")
    x = table.x[order]
    f = table.f[order]
    if x.size < 2:
        raise DataError("derivative needs at least two samples")
    if np.any(np.diff(x) == 0):
        raise DataError("derivative needs distinct x values")
    df = np.gradient(f, x)
    w = np.empty_like(x)
    w[1:-1] = (x[2:] - x[:-2]) / 2
    w[0] = (x[1] - x[0]) / 2
    w[-1] = (x[-1] - x[-2]) / 2
    return SampleTable(x, df, w)


def fitted_basis(table: SampleTable, name: str | BasisSpec) -> BasisSpec:
    basis = BasisSpec.from_name(name) if isinstance(name, str) else name
    return basis.fitted(float(table.x.min()), float(table.x.max()))


@dataclass(frozen=True)
class PipelineResult:
    samples: SampleTable
    basis: BasisSpec
    moments: MomentSet
    quadrature: LebesgueQuadrature
    christoffel: ChristoffelSpectrum
    spectrum: Spectrum

    @property
    def decomposition(self):
        return self.quadrature.decomposition


def run_pipeline(table: SampleTable, n: int, basis: str | BasisSpec = "chebyshev",
                 f_mode: FMode | str = FMode.COLUMN) -> PipelineResult:
    f_mode = FMode(f_mode)
    if n < 1:
        raise InvalidArgumentError("order n must be at least 1")
    if f_mode is FMode.DERIVATIVE_DX:
        table = derivative_samples(table)
    basis = fitted_basis(table, basis)
    moments = accumulate_moments(table, basis, n)
    gram = gram_from_moments(basis, moments.mu_moments, n)
    spectrum_K = christoffel_pencil(table, gram, basis, n)

    if f_mode is FMode.CHRISTOFFEL:
        table = SampleTable(table.x, christoffel_function(gram, basis, table.x), table.weight)
        moments = accumulate_moments(table, basis, n)
        pair = OperatorPair(basis, spectrum_K.k_matrix, gram)
    else:
        pair = matrices_from_moments(moments)
    quad = lebesgue_quadrature(pair)
    decomp = quad.decomposition
    x_psi = decomp.matrix_elements(x_matrix(moments)) if moments.mu_next is not None \
        else np.full(n, np.nan)
    w_K = christoffel_weights(decomp, spectrum_K)
    spectrum = Spectrum(quad.value_nodes, x_psi, quad.weights, w_K)
    return PipelineResult(table, basis, moments, quad, spectrum_K, spectrum)

