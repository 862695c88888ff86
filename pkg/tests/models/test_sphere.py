import numpy as np
import pytest

from rhocompat.models import (
    SphereModel,
    MixtureModel,
    build_from_rank3,
    sample_model,
    sample_sphere_point,
    sample_sphere_points,
    spearman_law,
    model_from_dict,
)
from rhocompat.stats import (
    spearman_matrix,
    max_entry_error,
    ks_uniform,
    ks_critical_value,
)
from rhocompat.benchmarks import random_sphere_factor
from rhocompat.certificates import matrix_12
from rhocompat.core import RankTooHighError


def test_sphere_points():

    rng = np.random.default_rng(0)
    v = sample_sphere_points(1000, rng)
    assert v.shape == (1000, 3)
    assert np.allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-14)
    print("mean:", np.mean(v, axis=0))
    assert np.all(np.abs(np.mean(v, axis=0)) < 0.1)

    rng = np.random.default_rng(1)
    p = sample_sphere_point(rng)
    assert p.shape == (3,)
    assert abs(np.linalg.norm(p) - 1.0) < 1e-12
    assert np.array_equal(p, sample_sphere_points(1, np.random.default_rng(1))[0])


def test_sphere_points_moments():

    n = 10**5
    p = sample_sphere_points(n, np.random.default_rng(9))
    mean = np.mean(p, axis=0)
    cov = np.cov(p, rowvar=False)
    print("mean:", mean)
    print("cov:", cov)
    assert np.all(np.abs(mean) < 0.02)
    assert np.all(np.abs(cov - np.eye(3) / 3.0) < 0.02)


def test_sphere_identity():

    n = 10**5
    model = SphereModel(np.eye(3))
    smp = sample_model(model, n, rng=0)
    stats, __ = ks_uniform(smp)
    err = max_entry_error(spearman_matrix(smp), np.eye(3))
    print("KS stats:", stats, ", max error:", err)
    assert smp.values.shape == (n, 3)
    assert np.all(np.abs(smp.values) <= 1.0)
    assert np.all(stats < ks_critical_value(n))
    assert err <= 0.02


def test_sphere_random_factors():

    n = 10**5
    rng = np.random.default_rng(17)
    results = []
    for __ in range(20):
        d = int(rng.integers(2, 10))
        a = random_sphere_factor(d, rng)
        model = SphereModel(a)
        assert np.allclose(spearman_law(model), a @ a.T, atol=1e-15)

        smp = model.sample(n, rng)
        stats, __ = ks_uniform(smp)
        err = max_entry_error(spearman_matrix(smp), a @ a.T)
        results.append((d, stats, err))

    for d, stats, err in results:
        print(d, np.max(stats) / ks_critical_value(n), err)
        assert np.all(stats < ks_critical_value(n))
        assert err <= 0.02


def test_sphere_estimator_consistency():

    n = 10**5
    bound = 3.0 / np.sqrt(n)
    rng = np.random.default_rng(31)
    for __ in range(10):
        d = int(rng.integers(3, 6))
        model = SphereModel(random_sphere_factor(d, rng))
        smp = model.sample(n, rng)
        err = max_entry_error(spearman_matrix(smp), model.spearman_law())
        print(d, err, bound)
        assert err <= bound


def test_sphere_unit_variance():

    n = 10**5
    model = SphereModel(np.eye(3), unit_variance=True)
    smp = model.sample(n, rng=5)
    var = np.var(smp.values, axis=0)
    print("variances:", var)
    assert np.all(np.abs(smp.values) <= np.sqrt(3.0) + 1e-12)
    assert np.all(np.abs(var - 1.0) < 0.02)
    stats, __ = ks_uniform(smp, -np.sqrt(3.0), np.sqrt(3.0))
    assert np.all(stats < ks_critical_value(n))


def test_sphere_errors():

    with pytest.raises(ValueError):
        SphereModel(np.ones((3, 3)))
    with pytest.raises(ValueError):
        SphereModel(np.eye(4))


def test_mixture():

    rng = np.random.default_rng(23)
    a1 = random_sphere_factor(5, rng)
    a2 = random_sphere_factor(5, rng)
    model = MixtureModel([0.3, 0.7], [SphereModel(a1), SphereModel(a2)])
    law = 0.3 * a1 @ a1.T + 0.7 * a2 @ a2.T
    assert np.allclose(model.spearman_law(), law, atol=1e-14)

    n = 10**5
    smp = model.sample(n, rng)
    err = max_entry_error(spearman_matrix(smp), law)
    stats, __ = ks_uniform(smp)
    print("max error:", err, ", KS stats:", stats)
    assert err <= 0.02
    assert np.all(stats < ks_critical_value(n))


def test_mixture_selection():

    model = MixtureModel(
        [0.25, 0.75], [SphereModel(np.eye(3)), SphereModel(np.eye(3)[::-1])]
    )
    ci = model.select_components(np.array([0.0, 0.2, 0.25, 0.9, 0.999999]))
    assert np.array_equal(ci, [0, 0, 1, 1, 1])


def test_mixture_errors():

    with pytest.raises(ValueError):
        MixtureModel([0.5, 0.6], [SphereModel(np.eye(3)), SphereModel(np.eye(3))])
    with pytest.raises(ValueError):
        MixtureModel([-0.5, 1.5], [SphereModel(np.eye(3)), SphereModel(np.eye(3))])
    with pytest.raises(ValueError):
        MixtureModel([0.5, 0.5], [SphereModel(np.eye(3)), SphereModel(np.eye(3)[:2])])


def test_build_from_rank3():

    r = np.array([[1.0, 0.6], [0.6, 1.0]])
    model = build_from_rank3(r)
    assert model.a.shape == (2, 3)
    assert np.allclose(model.spearman_law(), r, atol=1e-12)

    with pytest.raises(RankTooHighError):
        build_from_rank3(matrix_12())


def test_sampling_determinism():

    rng = np.random.default_rng(31)
    model = MixtureModel(
        [0.4, 0.6],
        [SphereModel(random_sphere_factor(4, rng)), SphereModel(random_sphere_factor(4, rng))],
    )
    for workers in (1, 3):
        s1 = model.sample(1001, rng=7, workers=workers)
        s2 = model.sample(1001, rng=7, workers=workers)
        assert np.array_equal(s1.values, s2.values)
        assert s1.values.shape == (1001, 4)


def test_model_dict():

    rng = np.random.default_rng(37)
    model = MixtureModel(
        [0.5, 0.5],
        [SphereModel(random_sphere_factor(3, rng)), SphereModel(np.eye(3))],
        unit_variance=True,
    )
    other = model_from_dict(model.to_dict())
    assert isinstance(other, MixtureModel)
    assert other.unit_variance
    assert np.array_equal(other.spearman_law(), model.spearman_law())

    with pytest.raises(KeyError):
        model_from_dict(dict(type="vine"))


if __name__ == "__main__":
    test_sphere_points()
    test_sphere_points_moments()
    test_sphere_identity()
    test_sphere_random_factors()
    test_sphere_estimator_consistency()
    test_sphere_unit_variance()
    test_sphere_errors()
    test_mixture()
    test_mixture_selection()
    test_mixture_errors()
    test_build_from_rank3()
    test_sampling_determinism()
    test_model_dict()
