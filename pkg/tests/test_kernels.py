"""Backend agreement: the compiled kernels must reproduce the pure NumPy
twins to floating-point noise on random inputs."""

import numpy as np
import pytest

from pubgrowth._kernels import backends
from pubgrowth.arima.estimate import statespace
from pubgrowth.arima.transform import unconstrained_to_ar, unconstrained_to_ma


@pytest.fixture(scope="module")
def both():
    found = backends()
    if len(found) < 2:
        pytest.skip("compiled kernel not built; nothing to compare")
    return found["python"], found["cython"]


def random_model(rng, p, q):
    phi = unconstrained_to_ar(rng.normal(size=p)) if p else np.empty(0)
    theta = unconstrained_to_ma(rng.normal(size=q)) if q else np.empty(0)
    return phi, theta


@pytest.mark.parametrize("p,q", [(0, 0), (1, 0), (0, 1), (1, 1), (3, 2), (5, 5)])
def test_kalman_agreement(both, p, q, rng):
    py, cy = both
    for _ in range(5):
        phi, theta = random_model(rng, p, q)
        y = rng.normal(size=rng.integers(10, 300))
        T, R, P0 = statespace(phi, theta)
        ssq_a, slf_a, res_a = py.kalman_run(y, T, R, P0)
        ssq_b, slf_b, res_b = cy.kalman_run(y, T, R, P0)
        assert ssq_a == pytest.approx(ssq_b, rel=1e-12)
        assert slf_a == pytest.approx(slf_b, rel=1e-12, abs=1e-12)
        np.testing.assert_allclose(res_a, res_b, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("p,q", [(0, 0), (2, 0), (0, 2), (2, 3)])
def test_css_agreement(both, p, q, rng):
    py, cy = both
    phi, theta = random_model(rng, p, q)
    x = rng.normal(size=500)
    np.testing.assert_allclose(
        py.css_residuals(x, phi, theta, 0.3),
        cy.css_residuals(x, phi, theta, 0.3),
        rtol=1e-12,
    )


@pytest.mark.parametrize("p,q", [(1, 1), (4, 0), (0, 4)])
def test_recursion_agreement(both, p, q, rng):
    py, cy = both
    phi, theta = random_model(rng, p, q)
    eps = rng.normal(size=1000)
    np.testing.assert_allclose(
        py.arma_recurse(eps, phi, theta, 0.5),
        cy.arma_recurse(eps, phi, theta, 0.5),
        rtol=1e-12,
    )
