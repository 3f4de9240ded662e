"""Gaussian and Lebesgue quadratures, Christoffel weights, density matrices and
Radon-Nikodym estimates from the moments of a sampled measure."""

from .basis import (BasisKind, BasisSpec, PolynomialInBasis, convert_polynomial, evaluate_basis,
                    multiplication_coefficients, multiplication_table, multiply_polynomials)
from .christoffel import ChristoffelSpectrum, christoffel_matrix, christoffel_pencil, christoffel_weights
from .clustering import (ClusterModel, build_clusters, cluster_measure, cluster_weight_at, rn_classify,
                         rn_interpolate)
from .density_matrix import (DensityMatrix, DensitySource, density_matrix_from_polynomial,
                             inverse_christoffel_polynomial, moments_producing_polynomial, pure_average,
                             reconstruct_diagonal, spur_product)
from .errors import DataError, InvalidArgumentError, LebesgueError, NumericalError
from .formats import (ColumnSpec, Spectrum, generate_runge, generate_two_stage, histogram, read_samples,
                      read_spectrum, read_table, write_spectrum)
from .gev import SpectralDecomposition, solve_pencil
from .moments import (MomentSet, OperatorPair, Sample, SampleTable, accumulate_moments, gaussian_pair,
                      matrices_from_moments, three_term_recurrence, x_matrix)
from .pipeline import FMode, run_pipeline
from .quadrature import (GaussianQuadrature, LebesgueQuadrature, christoffel_function, gaussian_quadrature,
                         integrate, lebesgue_quadrature, pca_variance_decomposition, weights_for_polynomial)
from .radon_nikodym import bag_moments, rn_distributed, rn_gamma, rn_nevai

__version__ = "0.1.0"

__all__ = [
    "accumulate_moments", "bag_moments", "BasisKind", "BasisSpec", "build_clusters",
    "christoffel_function", "christoffel_matrix", "christoffel_pencil", "christoffel_weights",
    "ChristoffelSpectrum", "cluster_measure", "cluster_weight_at", "ClusterModel", "ColumnSpec",
    "convert_polynomial", "DataError", "density_matrix_from_polynomial", "DensityMatrix",
    "DensitySource", "evaluate_basis", "FMode", "gaussian_pair", "gaussian_quadrature",
    "GaussianQuadrature", "generate_runge", "generate_two_stage", "histogram", "integrate",
    "InvalidArgumentError", "inverse_christoffel_polynomial", "lebesgue_quadrature",
    "LebesgueError", "LebesgueQuadrature", "matrices_from_moments", "moments_producing_polynomial",
    "MomentSet", "multiplication_coefficients", "multiplication_table", "multiply_polynomials",
    "NumericalError", "OperatorPair", "pca_variance_decomposition", "PolynomialInBasis",
    "pure_average", "read_samples", "read_spectrum", "read_table", "reconstruct_diagonal",
    "rn_classify", "rn_distributed", "rn_gamma", "rn_interpolate", "rn_nevai", "run_pipeline",
    "Sample", "SampleTable", "solve_pencil", "SpectralDecomposition", "Spectrum", "spur_product",
    "three_term_recurrence", "weights_for_polynomial", "write_spectrum", "x_matrix",
]
