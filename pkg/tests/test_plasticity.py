import math

import numpy as np
import pytest

from core.errors import BadWeights, DegenerateSubset, DimensionMismatch, DomainError, Infeasible
from fermat.service import solve_fermat
from inverse_fermat.bessel import bessel_path, bessel_plasticity
from inverse_fermat.plasticity import mutation_weights, plasticity_coefficients, plasticity_general
from inverse_fermat.service import fermat_point_invariant

# three balanced rays at 120 degrees plus a driver at 60 degrees
PLANAR_RAYS = np.array([
    [1.0, 0.0],
    [-0.5, math.sqrt(3) / 2],
    [-0.5, -math.sqrt(3) / 2],
    [0.5, math.sqrt(3) / 2],
])


def _balance(rays, weights):
    unit = rays / np.linalg.norm(rays, axis=1, keepdims=True)
    return float(np.linalg.norm(weights @ unit))


def test_planar_coefficients():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    np.testing.assert_allclose(model.base, [1 / 3, 1 / 3, 1 / 3], atol=1e-12)
    np.testing.assert_allclose(model.coefficients[:, 0], [-2 / 3, -2 / 3, 1 / 3], atol=1e-12)


def test_weights_keep_balance_and_total():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    for t in (0.0, 0.1, 0.4):
        weights = model.weights([t])
        assert weights.sum() == pytest.approx(1.0)
        assert _balance(model.rays, weights) < 1e-10


def test_sign_diagnostics_and_window():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    diagnostics = model.sign_diagnostics()
    assert diagnostics["directions"] == [-1, -1, 1]
    assert diagnostics["last_base_weight_decreases"] is False
    lo, hi = diagnostics["window"]
    assert lo == 0.0
    assert hi == pytest.approx(0.5)


def test_matching_base_weights_are_accepted():
    plasticity_coefficients(PLANAR_RAYS, C=1.0, base_weights=[2, 2, 2])
    with pytest.raises(BadWeights):
        plasticity_coefficients(PLANAR_RAYS, C=1.0, base_weights=[1, 2, 3])


def test_two_drivers_in_space(regular_tetrahedron):
    rays = np.vstack([regular_tetrahedron, [[0.0, 0.0, 1.0], [1.0, 0.2, 0.0]]])
    model = plasticity_general(rays, C=1.0)
    assert model.driver_count == 2
    weights = model.weights([0.05, 0.03])
    assert weights.sum() == pytest.approx(1.0)
    assert _balance(model.rays, weights) < 1e-10


def test_too_few_rays():
    with pytest.raises(DimensionMismatch):
        plasticity_general(PLANAR_RAYS[:3])


def test_degenerate_ray_subset():
    rays = np.array([[1.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(DegenerateSubset):
        plasticity_general(rays)


def test_mutation_weights_with_two_inflows():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    weights = mutation_weights(model, k=2, c=1.0, storage=0.0)
    np.testing.assert_allclose(weights, [0.25, 0.25, 0.375, 0.125], atol=1e-10)
    assert weights[:2].sum() - weights[2:].sum() == pytest.approx(0.0, abs=1e-10)
    assert fermat_point_invariant(model.rays, weights, np.zeros(2))


def test_mutation_rejects_contradicting_storage():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    with pytest.raises(Infeasible):
        mutation_weights(model, k=2, c=1.0, storage=5.0)
    with pytest.raises(DomainError):
        mutation_weights(model, k=0, c=1.0)


def test_bessel_path_is_reproducible():
    first = bessel_path(1.0, 3, 1.0, 0.01, seed=42)
    second = bessel_path(1.0, 3, 1.0, 0.01, seed=42)
    other = bessel_path(1.0, 3, 1.0, 0.01, seed=43)
    np.testing.assert_array_equal(first.values, second.values)
    assert not np.array_equal(first.values, other.values)
    assert len(first.times) == 101
    assert first.times[-1] == pytest.approx(1.0)


def test_bessel_drift_only_grows():
    path = bessel_path(1.0, 3, 1.0, 0.01, seed=0, noise=False)
    assert np.all(np.diff(path.values) > 0)


@pytest.mark.parametrize("r0", [0.0, 1.0])
def test_bessel_drift_only_matches_the_closed_form(r0):
    path = bessel_path(r0, 3, 1.0, 0.001, seed=0, noise=False)
    np.testing.assert_allclose(path.values ** 2, r0 ** 2 + 2 * path.times, rtol=1e-3, atol=1e-12)


def test_bessel_squared_mean_grows_linearly():
    finals = np.array([bessel_path(0.0, 3, 1.0, 0.01, seed=s).values[-1] for s in range(400)])
    assert np.mean(finals ** 2) == pytest.approx(3.0, rel=0.15)


def test_bessel_path_stays_positive():
    path = bessel_path(0.0, 2, 1.0, 0.001, seed=5)
    assert np.all(path.values[1:] > 0)


def test_bessel_parameter_validation():
    with pytest.raises(DomainError):
        bessel_path(1.0, 1, 1.0, 0.01, seed=0)
    with pytest.raises(DomainError):
        bessel_path(1.0, 3, 1.0, 0.0, seed=0)


def test_bessel_driven_weights():
    model = plasticity_coefficients(PLANAR_RAYS, C=1.0)
    path = bessel_path(0.1, 3, 1.0, 0.01, seed=7)
    trajectory = bessel_plasticity(model, path, c=2.0)
    np.testing.assert_allclose(trajectory.weights.sum(axis=1), 2.0)
    # the first two base weights reach zero once the driver passes 1/2
    assert trajectory.violations == int(np.count_nonzero(path.values > 0.5))


@pytest.mark.parametrize("N", [3, 4])
def test_driven_weights_keep_the_fermat_point(N):
    rng = np.random.default_rng(300 + N)
    base = np.vstack([np.zeros(N), np.eye(N)])
    point = base.mean(axis=0)
    driver = rng.normal(size=N)
    rays = np.vstack([base - point, driver / np.linalg.norm(driver)])
    model = plasticity_general(rays, C=1.0)
    lo, hi = model.driver_window(0)
    terminals = point + rng.uniform(1.0, 3.0, size=(N + 2, 1)) * model.rays
    for t in np.linspace(lo, min(hi, 1.0), 7)[1:-1]:
        weights = model.weights([t])
        assert np.all(weights > 0)
        np.testing.assert_allclose(solve_fermat(terminals, weights).point, point, atol=1e-6)
