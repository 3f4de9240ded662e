import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import chebyshev_on, random_measure
from lebesgue_quadrature.basis import BasisSpec
from lebesgue_quadrature.christoffel import christoffel_pencil, christoffel_weights
from lebesgue_quadrature.clustering import (build_clusters, cluster_measure, cluster_weight_at, rn_classify,
                                            rn_interpolate)
from lebesgue_quadrature.errors import (DegeneratePointError, InvalidArgumentError, InvalidMeasureError,
                                        RankDeficientMeasureError)
from lebesgue_quadrature.gev import solve_pencil
from lebesgue_quadrature.moments import OperatorPair, SampleTable, accumulate_moments, matrices_from_moments
from lebesgue_quadrature.quadrature import lebesgue_quadrature


def setup(seed, n):
    rng = np.random.default_rng(seed)
    t = random_measure(rng, smooth=True)
    basis = chebyshev_on(t)
    pair = matrices_from_moments(accumulate_moments(t, basis, n))
    return rng, t, basis, pair, lebesgue_quadrature(pair)


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_exact_recovery(n):
    _, _, _, _, quad = setup(n, n)
    model = build_clusters(quad.decomposition, quad.weights, n)
    np.testing.assert_allclose(model.cluster_values, quad.value_nodes, atol=1e-9)
    np.testing.assert_allclose(model.cluster_weights, quad.weights, atol=1e-9)


def test_exact_recovery_of_discrete_measure(rng):
    values = np.sort(rng.uniform(-3, 5, 6))
    weights = rng.uniform(0.2, 2, 6)
    quad = cluster_measure(values, weights, 6)
    np.testing.assert_allclose(quad.nodes, values, atol=1e-9)
    np.testing.assert_allclose(quad.weights, weights, atol=1e-9)


def test_zero_weight_nodes_not_support():
    quad = cluster_measure([0.0, 1.0, 2.0, 3.0], [1.0, 0.0, 2.0, 0.0], 2)
    np.testing.assert_allclose(quad.nodes, [0.0, 2.0], atol=1e-12)
    with pytest.raises(RankDeficientMeasureError):
        cluster_measure([0.0, 1.0, 2.0, 3.0], [1.0, 0.0, 2.0, 0.0], 3)


def test_single_cluster(rng):
    _, t, _, _, quad = setup(11, 5)
    model = build_clusters(quad.decomposition, quad.weights, 1)
    total = quad.weights.sum()
    assert model.cluster_weights[0] == pytest.approx(total, rel=1e-12)
    assert model.cluster_values[0] == pytest.approx(quad.value_nodes @ quad.weights / total, rel=1e-12)
    x = np.linspace(-1, 1, 7)
    np.testing.assert_allclose(rn_interpolate(model, x), model.cluster_values[0], rtol=1e-14)
    np.testing.assert_allclose(rn_classify(model, x), model.cluster_values[0], rtol=1e-14)


@given(st.integers(1, 10_000), st.integers(2, 7), st.data())
def test_measure_conservation_and_orthogonality(seed, n, data):
    rng, t, basis, pair, quad = setup(seed, n)
    D = data.draw(st.integers(1, n))
    model = build_clusters(quad.decomposition, quad.weights, D)
    assert model.cluster_weights.sum() == pytest.approx(quad.weights.sum(), rel=1e-9)
    overlap, fmat, means = model.operator_averages()
    np.testing.assert_allclose(overlap, np.eye(D), atol=1e-9)
    np.testing.assert_allclose(fmat, np.diag(model.cluster_values), atol=1e-9)
    # rounding is at the scale of the total measure, not of each small cluster
    np.testing.assert_allclose(means ** 2, model.cluster_weights, rtol=1e-9, atol=1e-9 * quad.weights.sum())


@given(st.integers(1, 10_000), st.integers(2, 7), st.data())
def test_orthogonality_with_christoffel_rho(seed, n, data):
    rng, t, basis, pair, quad = setup(seed, n)
    spec = christoffel_pencil(t, pair.right, basis, n)
    D = data.draw(st.integers(1, n))
    wK = christoffel_weights(quad.decomposition, spec)
    model = build_clusters(quad.decomposition, wK, D, spec.rho_K)
    overlap, fmat, means = model.operator_averages()
    np.testing.assert_allclose(overlap, np.eye(D), atol=1e-9)
    np.testing.assert_allclose(fmat, np.diag(model.cluster_values), atol=1e-9)
    np.testing.assert_allclose(means ** 2, model.cluster_weights, rtol=1e-9, atol=1e-9 * wK.sum())
    x = rng.uniform(t.x.min(), t.x.max(), 50)
    for m in range(D):
        assert np.all(cluster_weight_at(model, m, x) >= -1e-12)


def test_pure_and_general_paths_agree():
    rng, t, basis, pair, quad = setup(5, 6)
    model = build_clusters(quad.decomposition, quad.weights, 3)
    x = rng.uniform(-1, 1, 50)
    for m in range(3):
        pure = cluster_weight_at(model, m, x, method="pure")
        general = cluster_weight_at(model, m, x, method="general")
        np.testing.assert_allclose(general, pure, rtol=1e-10, atol=1e-10 * pure.max())


def test_full_rank_pure_weight_functions():
    rng, t, basis, pair, quad = setup(8, 5)
    d = quad.decomposition
    model = build_clusters(d, quad.weights, 5)
    x = rng.uniform(-1, 1, 20)
    # psi_G_m is L-normalized, so psi_G_m(f_i) = delta_im / <psi_m> and p_m = psi_m(x)^2
    expected = d.psi(x) ** 2
    for m in range(5):
        np.testing.assert_allclose(cluster_weight_at(model, m, x), expected[:, m], rtol=1e-8,
                                   atol=1e-10 * expected.max())


@given(st.integers(1, 10_000), st.integers(2, 7), st.data())
def test_bound_preservation(seed, n, data):
    rng, t, basis, pair, quad = setup(seed, n)
    D = data.draw(st.integers(1, n))
    model = build_clusters(quad.decomposition, quad.weights, D)
    x = rng.uniform(-1.5, 1.5, 100)
    lo, hi = model.cluster_values.min(), model.cluster_values.max()
    for values in (rn_interpolate(model, x), rn_classify(model, x)):
        assert np.all(values >= lo) and np.all(values <= hi)


def test_equal_cluster_weights_classify_equals_interpolate():
    basis = BasisSpec()
    x = np.linspace(-1, 1, 201)
    t = SampleTable.from_arrays(x, np.sign(x) + 0.1 * x)
    d = solve_pencil(matrices_from_moments(accumulate_moments(t, basis, 6)))
    model = build_clusters(d, np.ones(6), 2)
    assert model.cluster_weights[0] == pytest.approx(model.cluster_weights[1])
    probe = np.linspace(-0.9, 0.9, 11)
    np.testing.assert_allclose(rn_classify(model, probe), rn_interpolate(model, probe), rtol=1e-12, atol=1e-14)


def test_gaussian_case_interpolates_nodes(rng):
    x = rng.uniform(-1, 1, 400)
    t = SampleTable.from_arrays(x, x)
    pair = matrices_from_moments(accumulate_moments(t, chebyshev_on(t), 5))
    quad = lebesgue_quadrature(pair)
    model = build_clusters(quad.decomposition, quad.weights, 5)
    nodes = quad.value_nodes
    np.testing.assert_allclose(rn_interpolate(model, nodes), nodes, atol=1e-8)


def test_two_stage_clusters(two_stage):
    basis = chebyshev_on(two_stage)
    pair = matrices_from_moments(accumulate_moments(two_stage, basis, 50))
    quad = lebesgue_quadrature(pair)
    model = build_clusters(quad.decomposition, quad.weights, 2)
    x = np.linspace(0, 1000, 401)
    f_rn = rn_interpolate(model, x)
    assert np.all(f_rn >= -5e-4) and np.all(f_rn <= -1e-4)
    interior = (x > 100) & (x < 700)
    assert np.all(np.abs(f_rn[interior] + 1e-4) < 0.1e-4)
    spec = christoffel_pencil(two_stage, pair.right, basis, 50)
    modelK = build_clusters(quad.decomposition, christoffel_weights(quad.decomposition, spec), 2, spec.rho_K)
    for m in range(2):
        assert np.all(cluster_weight_at(modelK, m, x) >= -1e-12)
    gap = abs(np.diff(model.cluster_values)[0])
    assert np.all(np.abs(rn_classify(model, x) - f_rn) < gap)


def test_errors():
    _, _, _, _, quad = setup(3, 4)
    d = quad.decomposition
    with pytest.raises(InvalidMeasureError):
        build_clusters(d, -quad.weights, 2)
    with pytest.raises(RankDeficientMeasureError):
        build_clusters(d, quad.weights, 5)
    with pytest.raises(InvalidArgumentError):
        build_clusters(d, quad.weights[:3], 2)
    with pytest.raises(InvalidArgumentError):
        build_clusters(d, quad.weights, 0)
    model = build_clusters(d, quad.weights, 2)
    with pytest.raises(InvalidArgumentError):
        cluster_weight_at(model, 2, 0.0)
    with pytest.raises(InvalidArgumentError):
        cluster_weight_at(model, 0, 0.0, method="bogus")


def test_degenerate_point():
    # a zero density matrix makes every p_m vanish
    from lebesgue_quadrature.density_matrix import DensityMatrix, DensitySource
    d = solve_pencil(OperatorPair(BasisSpec(), np.diag([1.0, 2.0]), np.eye(2)))
    zero = DensityMatrix(d, DensitySource.FROM_POLYNOMIAL, np.zeros((2, 2)))
    model = build_clusters(d, np.array([1.0, 0.0]), 1, zero)
    with pytest.raises(DegeneratePointError):
        rn_interpolate(model, 0.3)


def test_two_stage_christoffel_weighted_clusters(two_stage):
    # w_K clusters converge to 200:800 more slowly than the Lebesgue ones
    errors = []
    for n in (30, 50, 80):
        basis = chebyshev_on(two_stage)
        pair = matrices_from_moments(accumulate_moments(two_stage, basis, n))
        decomp = lebesgue_quadrature(pair).decomposition
        spec = christoffel_pencil(two_stage, pair.right, basis, n)
        model = build_clusters(decomp, christoffel_weights(decomp, spec), 2, spec.rho_K)
        np.testing.assert_allclose(model.cluster_values, [-5e-4, -1e-4], rtol=0.03)
        assert model.cluster_weights.sum() == pytest.approx(1000, rel=1e-9)
        errors.append(abs(model.cluster_weights[0] - 200))
    assert errors[0] > errors[1] > errors[2]
    assert errors[1] < 0.015 * 200
