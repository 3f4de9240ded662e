import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import chebyshev_on, random_measure
from lebesgue_quadrature.errors import DegenerateStateError, InvalidArgumentError, PositiveSpectrumRequiredError
from lebesgue_quadrature.gev import solve_pencil
from lebesgue_quadrature.moments import OperatorPair, SampleTable, accumulate_moments, matrices_from_moments
from lebesgue_quadrature.radon_nikodym import bag_moments, rn_distributed, rn_gamma, rn_nevai, state_projections


def decomposition(seed, n, positive=False):
    rng = np.random.default_rng(seed)
    t = random_measure(rng)
    if positive:
        t = SampleTable(t.x, np.abs(t.f) + 0.1, t.weight)
    pair = matrices_from_moments(accumulate_moments(t, chebyshev_on(t), n))
    return rng, solve_pencil(pair), pair


@given(st.integers(1, 10_000), st.integers(1, 8), st.floats(-1, 1))
def test_bounds(seed, n, gamma):
    rng, d, _ = decomposition(seed, n, positive=True)
    x = rng.uniform(-1.2, 1.2, 50)
    lo, hi = d.eigenvalues.min(), d.eigenvalues.max()
    for values in (rn_nevai(d, x), rn_gamma(d, x, gamma)):
        assert np.all(values >= lo) and np.all(values <= hi)


@given(st.integers(1, 10_000), st.integers(1, 8))
def test_localization_consistency(seed, n):
    rng, d, _ = decomposition(seed, n)
    x = rng.uniform(-1, 1, 20)
    q = d.basis.vander(x, n)
    np.testing.assert_allclose(rn_distributed(d, q), rn_nevai(d, x), rtol=1e-12,
                               atol=1e-12 * np.abs(d.eigenvalues).max())


def test_gamma_one_is_nevai(rng):
    _, d, _ = decomposition(4, 5)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(rn_gamma(d, x, 1.0), rn_nevai(d, x), rtol=1e-13)


def test_gamma_zero_is_harmonic():
    _, d, _ = decomposition(9, 4, positive=True)
    x = 0.3
    p2 = d.psi(x) ** 2
    assert rn_gamma(d, x, 0.0) == pytest.approx(p2.sum() / (p2 / d.eigenvalues).sum(), rel=1e-13)


@pytest.mark.parametrize("i", [0, 2, 4])
def test_extremal_property(i):
    _, d, pair = decomposition(17, 5)
    a = d.eigenvectors
    j = (i + 1) % 5
    devs = []
    for eps in (1e-3, 1e-4):
        v = a[i] + eps * a[j]
        q = (v @ pair.left @ v) / (v @ pair.right @ v)
        devs.append(abs(q - d.eigenvalues[i]))
    gap = abs(d.eigenvalues[j] - d.eigenvalues[i])
    assert devs[0] <= 2 * gap * 1e-6
    assert devs[0] / devs[1] == pytest.approx(100, rel=1e-3)


def test_zero_eigenvalue_limits():
    from lebesgue_quadrature.basis import BasisSpec
    basis = BasisSpec()
    G = np.eye(2)
    d = solve_pencil(OperatorPair(basis, np.diag([2.0, 0.0]), G))
    # the lambda = 0 state is psi = x: admissible only where it vanishes
    assert rn_gamma(d, 0.0, 0.5) == pytest.approx(2.0)
    assert rn_gamma(d, 0.5, 1.0) == pytest.approx(2.0 / 1.25)
    for gamma in (0.5, -0.5, 0.0):
        with pytest.raises(PositiveSpectrumRequiredError):
            rn_gamma(d, 0.5, gamma)


def test_errors():
    _, d, _ = decomposition(2, 4)
    with pytest.raises(InvalidArgumentError):
        rn_gamma(d, 0.0, 1.5)
    if d.eigenvalues.min() < 0:
        with pytest.raises(PositiveSpectrumRequiredError):
            rn_gamma(d, 0.0, 0.5)
    with pytest.raises(InvalidArgumentError):
        rn_nevai(d, np.nan)
    with pytest.raises(DegenerateStateError):
        rn_distributed(d, np.zeros(4))
    with pytest.raises(InvalidArgumentError):
        state_projections(d, np.zeros(3))


def test_bag_moments():
    _, d, _ = decomposition(3, 4)
    xs = np.array([-0.5, 0.1, 0.7])
    q = bag_moments(d, xs)
    np.testing.assert_allclose(q, d.basis.vander(xs, 4).mean(axis=0))
    value = rn_distributed(d, q)
    assert d.eigenvalues.min() <= value <= d.eigenvalues.max()
    # a single-point bag is the localized estimate
    assert rn_distributed(d, bag_moments(d, [0.1])) == pytest.approx(rn_nevai(d, 0.1), rel=1e-12)


def test_runge_density_estimators_converge(runge):
    # dnu = f dmu with f the Runge function: the gamma = 0 and gamma = 1
    # estimates approach each other as n grows (0.070 apart at n = 12)
    from lebesgue_quadrature.basis import BasisSpec
    t = SampleTable(runge.x, 1 / (1 + 25 * runge.x ** 2), runge.weight)
    x = np.linspace(-0.8, 0.8, 161)
    gaps = []
    for n in (8, 12, 16, 20):
        d = solve_pencil(matrices_from_moments(accumulate_moments(t, BasisSpec(), n)))
        gaps.append(np.abs(rn_gamma(d, x, 0.0) - rn_gamma(d, x, 1.0)).max())
    assert gaps[1] < 0.075
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_constant_density():
    t = SampleTable.from_arrays(np.linspace(-1, 1, 50), np.full(50, 3.0))
    from lebesgue_quadrature.basis import BasisSpec
    d = solve_pencil(matrices_from_moments(accumulate_moments(t, BasisSpec(), 6)))
    x = np.linspace(-1, 1, 9)
    for gamma in (-1.0, -0.3, 0.0, 0.4, 1.0):
        np.testing.assert_allclose(rn_gamma(d, x, gamma), 3.0, rtol=1e-10)
