import numpy as np
import pytest

from biharmonic_tanno.ambient import random_sphere_points, random_tangent
from biharmonic_tanno.axioms import (
    axiom_report,
    contact_residuals,
    curvature_residuals,
    deta_samples,
    sasakian_residual,
)
from biharmonic_tanno.connections import Oracle


def test_contact_identities(struct, rng):
    z = random_sphere_points(rng, 100)
    X, Y = random_tangent(rng, z), random_tangent(rng, z)
    for name, r in contact_residuals(struct, z, X, Y).items():
        assert r <= 1e-12, name


def test_curvature_identities(struct, rng):
    z = random_sphere_points(rng, 100)
    X, Y, Z, W = (random_tangent(rng, z) for _ in range(4))
    for name, r in curvature_residuals(struct, z, X, Y, Z, W).items():
        assert r <= 1e-10, name


def test_sasakian_identity_via_oracle(struct, rng):
    oracle = Oracle(struct)
    for p in random_sphere_points(rng, 3):
        assert sasakian_residual(struct, oracle, p, random_tangent(rng, p)) <= 1e-5


def test_sasakian_identity_fails_for_wrong_structure(half, rng):
    # a rescaled phi breaks the covariant identity
    from biharmonic_tanno.sasakian import TannoStructure

    class Broken(TannoStructure):
        def phi(self, z, v):
            return 1.5 * super().phi(z, v)

    broken = Broken(0.5)
    p = random_sphere_points(rng, 1)[0]
    assert sasakian_residual(broken, Oracle(half), p, random_tangent(rng, p)) > 1e-2


def test_deta_convention(struct, rng):
    oracle = Oracle(struct)
    d, g = deta_samples(struct, oracle, random_sphere_points(rng, 1)[0])
    np.testing.assert_allclose(d, 2 * g, atol=1e-6)


def test_axiom_report(half):
    rep = axiom_report(half, oracle_points=3)
    assert rep.passed
    assert rep.values["deta_lambda"] == pytest.approx(2.0, abs=1e-6)
    assert len(rep.checks) == 16
    assert rep.config["points"] == 100
