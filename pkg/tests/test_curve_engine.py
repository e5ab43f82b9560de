import numpy as np
import pytest
from hypothesis import given, settings

from biharmonic_tanno.curve_engine import (
    GEODESIC,
    NEITHER,
    PROPER,
    bitension,
    classify,
    frenet,
    legendre_defect,
    reparametrize,
    speed,
    tension,
    tension_profile,
)
from biharmonic_tanno.curves import ArcLengthCurve, ClosedFormCurve
from biharmonic_tanno.errors import DegenerateCurve, NotLegendre, NotUnitSpeed
from biharmonic_tanno.generators import (
    LegendreFrame,
    cylinder_geodesic,
    helix_alpha_for_curvature,
    hopf_cylinder,
    legendre_biharmonic_curve,
    legendre_helix,
    reeb_orbit,
)
from biharmonic_tanno.sasakian import TannoStructure

from conftest import a_values


def great_circle(struct):
    """Legendre g-geodesic cos(t) e1 + sin(t) e3 at g-unit speed."""
    c = ClosedFormCurve([1.0], [0.0], [[1.0, 0, 0, 0]], [[0, 1.0, 0, 0]])
    return c.rescaled(1 / np.sqrt(struct.a))


def test_frenet_worked_example(half):
    f = frenet(half, legendre_biharmonic_curve(half), 0.9)
    assert abs(f.speed - 1) <= 1e-12
    assert abs(f.curvature - 2) <= 1e-12
    assert abs(half.metric(legendre_biharmonic_curve(half)(0.9), f.normal, f.normal) - 1) <= 1e-12


def test_frenet_reeb_orbit_has_zero_curvature(struct):
    f = frenet(struct, reeb_orbit(struct, [0.0, 0.0, 0.6, 0.8]), 0.3)
    assert f.curvature <= 1e-12 and f.normal is None


def test_degenerate_curve():
    st = TannoStructure(0.5)
    point = ClosedFormCurve([1.0], [0.0], [[0, 0, 0, 0]], [[0, 0, 0, 0]], offset=[1.0, 0, 0, 0])
    with pytest.raises(DegenerateCurve):
        frenet(st, point, 0.0)


@given(a_values)
@settings(max_examples=15)
def test_generated_curve_is_unit_legendre_helix(a):
    st = TannoStructure(a)
    c = legendre_biharmonic_curve(st)
    for s in np.linspace(-4, 4, 5):
        assert abs(speed(st, c, s) - 1) <= 1e-10
        assert legendre_defect(st, c, s) <= 1e-10
        assert abs(frenet(st, c, s).curvature ** 2 - (st.c - 1)) <= 1e-6


def test_tension_norms(struct):
    c = legendre_biharmonic_curve(struct)
    p = c(1.2)
    assert abs(struct.norm(p, tension(struct, c, 1.2)) - struct.kappa) <= 1e-10
    assert struct.norm(p, bitension(struct, c, 1.2)) <= 1e-10
    g = great_circle(struct)
    assert np.max(np.abs(tension(struct, g, 0.4))) <= 1e-12
    assert np.max(np.abs(bitension(struct, g, 0.4))) <= 1e-12


def test_tension_requires_unit_speed(half):
    slow = ClosedFormCurve([1.0], [0.0], [[1.0, 0, 0, 0]], [[0, 1.0, 0, 0]])
    with pytest.raises(NotUnitSpeed):
        tension(half, slow, 0.0)
    with pytest.raises(NotUnitSpeed):
        bitension(half, slow, 0.0)


def test_classification_examples(struct):
    assert classify(struct, legendre_biharmonic_curve(struct)).classification == PROPER
    assert classify(struct, great_circle(struct)).classification == GEODESIC
    alpha = helix_alpha_for_curvature(struct, (struct.c - 1) / 2)
    rep = classify(struct, legendre_helix(struct, LegendreFrame.standard(), alpha))
    assert rep.classification == NEITHER
    assert rep.consistent
    assert rep.bitension_norms.min() > 1e-3


def test_helix_curvature_formula(struct):
    for k2 in (0.5, struct.c - 1, 2 * struct.c):
        c = legendre_helix(struct, LegendreFrame.standard(), helix_alpha_for_curvature(struct, k2))
        assert abs(frenet(struct, c, 0.2).curvature ** 2 - k2) <= 1e-9 * max(1, k2)


def test_classification_reversal_invariant(struct):
    c = legendre_biharmonic_curve(struct)
    assert classify(struct, c.reversed()).classification == classify(struct, c).classification


def test_oracle_route_classification(struct):
    rep = classify(struct, legendre_biharmonic_curve(struct), "oracle", np.linspace(0, 6, 10))
    assert rep.classification == PROPER
    assert rep.consistent
    assert rep.bitension_norms.max() <= 1e-3


def test_not_legendre_rejected(half):
    with pytest.raises(NotLegendre):
        classify(half, reeb_orbit(half, [1.0, 0, 0, 0]))


def test_reparametrize_constant_speed_rescales(half):
    c = legendre_biharmonic_curve(half)
    again = reparametrize(half, c.rescaled(0.5))
    assert isinstance(again, ClosedFormCurve)
    np.testing.assert_allclose(again(np.array([0.3, 1.0])), c(np.array([0.3, 1.0])), atol=1e-12)
    assert reparametrize(half, c) is c


def wobbly_curve():
    """cos t e1 + sin t (cos t e2 + sin t e3): on the sphere with non-constant speed."""
    return ClosedFormCurve([1.0, 2.0], [0.0, 0.0], [[1.0, 0, 0, 0], [0, 0, -0.5, 0]],
                           [[0, 0, 0, 0], [0, 0.5, 0, 0]], offset=[0, 0, 0.5, 0])


def test_reparametrize_variable_speed(half):
    raw = wobbly_curve()
    t = np.linspace(0, 3, 7)
    np.testing.assert_allclose(np.sum(raw(t) ** 2, axis=1), 1.0, atol=1e-14)
    assert np.ptp([speed(half, raw, x) for x in t]) > 0.1
    unit = reparametrize(half, raw)
    assert isinstance(unit, ArcLengthCurve)
    for s in (0.4, 1.7, -0.9):
        assert abs(speed(half, unit, s) - 1) <= 1e-10
        np.testing.assert_allclose(unit(s), raw(unit.parameter(s)), atol=1e-13)


def test_classify_accepts_non_unit_geodesic(half):
    base = ClosedFormCurve([1.0], [0.0], [[1.0, 0, 0, 0]], [[0, 1.0, 0, 0]])
    rep = classify(half, base, samples=np.linspace(0, 3, 4))
    assert rep.classification == GEODESIC


def test_tension_profile_matches_pointwise(struct):
    patch = hopf_cylinder(struct)
    g = cylinder_geodesic(patch, 0.6, 0.8)
    s = np.linspace(0, 2, 4)
    prof = tension_profile(struct, g, s)
    for i, t in enumerate(s):
        p = g(t)
        assert abs(prof.tension_norms[i] - struct.norm(p, tension(struct, g, t))) <= 1e-12
        assert abs(prof.bitension_norms[i] - struct.norm(p, bitension(struct, g, t))) <= 1e-10
