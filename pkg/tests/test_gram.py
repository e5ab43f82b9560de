import numpy as np
import pytest
from hypothesis import given, settings

from biharmonic_tanno.ambient import j_apply
from biharmonic_tanno.errors import IllConditioned, InconsistentSolution
from biharmonic_tanno.generators import hopf_cylinder, legendre_biharmonic_curve
from biharmonic_tanno.gram import (
    UNKNOWNS,
    GramSolution,
    build_curve_system,
    build_cylinder_system,
    reconstruct_curve,
    reconstruct_patch,
    solve_gram,
)
from biharmonic_tanno.sasakian import TannoStructure

from conftest import a_values

S3 = np.sqrt(3.0)


def coeffs(**named):
    row = np.zeros(len(UNKNOWNS))
    for k, v in named.items():
        row[UNKNOWNS.index(k)] = v
    return row


def test_unknown_ordering():
    assert UNKNOWNS == ("c11", "c12", "c13", "c14", "c22", "c23", "c24", "c33", "c34", "c44")


def test_curve_rows(half):
    sysm = build_curve_system(half)
    A, B, a = half.A, half.B, half.a
    row, rhs = sysm.row("<g,g>")
    np.testing.assert_array_equal(row, [1, 0, 2, 0, 0, 0, 0, 1, 0, 0])
    assert rhs == 1.0
    row, rhs = sysm.row("<g',g'>")
    np.testing.assert_allclose(row, coeffs(c22=A**2, c24=2 * A * B, c44=B**2), atol=1e-14)
    assert rhs == pytest.approx(1 / a, abs=1e-15)
    row, rhs = sysm.row("<g''',g'''>")
    np.testing.assert_allclose(row, coeffs(c22=A**6, c24=2 * A**3 * B**3, c44=B**6), rtol=1e-14, atol=1e-12)
    assert rhs == pytest.approx((16 * a**2 - 44 * a + 29) / a**3, rel=1e-15)
    assert len(set(sysm.labels)) == 10


def test_cylinder_rows(half):
    sysm = build_cylinder_system(half)
    A, B = half.A, half.B
    row, rhs = sysm.row("<x_v,x_v>")
    np.testing.assert_allclose(row, coeffs(c22=1, c24=-2, c44=1), atol=1e-14)
    assert rhs == pytest.approx(1.0, abs=1e-15)
    assert len(set(sysm.labels)) == 10
    row, rhs = sysm.row("<x_u,x_u>(0,a pi/2)")
    np.testing.assert_allclose(row, coeffs(c11=A**2, c13=-2 * A * B, c33=B**2), atol=1e-13)
    assert rhs == pytest.approx(2.0)
    row, rhs = sysm.row("<x_u,x_v>(0,a pi/2)")
    np.testing.assert_allclose(row, coeffs(c11=-A, c13=B - A, c33=B), atol=1e-13)
    assert rhs == 0.0


def test_subsystem_determinant_half(half):
    assert build_curve_system(half).subsystem_determinant() == pytest.approx(-9216.0, rel=1e-8)


@given(a_values)
@settings(max_examples=20)
def test_subsystem_determinant_formula(a):
    sysm = build_curve_system(TannoStructure(a))
    expected = sysm.expected_subsystem_determinant()
    assert expected < 0
    assert abs(sysm.subsystem_determinant() - expected) <= 1e-8 * abs(expected)


def test_solution_half(half):
    sol = solve_gram(build_curve_system(half))
    assert sol.gram[0, 0] == pytest.approx((S3 + 1) / (2 * S3), abs=1e-12)
    assert sol.gram[0, 0] == pytest.approx(0.7887, abs=1e-4)
    assert sol.gram[2, 2] == pytest.approx(0.2113, abs=1e-4)
    assert sol.residual <= 1e-10


def test_solution_closed_form(struct):
    for build in (build_curve_system, build_cylinder_system):
        sol = solve_gram(build(struct))
        np.testing.assert_allclose(sol.gram, sol.expected(), atol=1e-10)
        assert sol.gram[0, 0] + sol.gram[2, 2] == pytest.approx(1.0, abs=1e-12)
        assert np.trace(sol.gram) == pytest.approx(2.0, abs=1e-10)
        A, B = struct.A, struct.B
        assert np.linalg.det(sol.gram) == pytest.approx(A**2 * B**2 / (A + B) ** 4, abs=1e-10)
        assert np.all(np.linalg.eigvalsh(sol.gram) > 0)
        assert sol.residual <= 1e-10


def test_curve_and_cylinder_systems_agree():
    for a in np.linspace(0.05, 0.95, 20):
        st = TannoStructure(a)
        g1 = solve_gram(build_curve_system(st)).gram
        g2 = solve_gram(build_cylinder_system(st)).gram
        assert np.max(np.abs(g1 - g2)) <= 1e-10


def test_ill_conditioned_near_one():
    st = TannoStructure(0.999)
    with pytest.raises(IllConditioned):
        solve_gram(build_curve_system(st))
    with pytest.raises(IllConditioned):
        solve_gram(build_cylinder_system(st))


def test_reconstruction(struct):
    sol = solve_gram(build_curve_system(struct))
    s = np.linspace(-10, 10, 100)
    gen = legendre_biharmonic_curve(struct)
    assert np.max(np.abs(reconstruct_curve(sol)(s) - gen(s))) <= 1e-12
    assert np.max(np.abs(reconstruct_curve(sol, branch=-1)(s) - gen(-s))) <= 1e-12
    with pytest.raises(ValueError):
        reconstruct_curve(sol, branch=0)


def test_patch_reconstruction(struct, rng):
    sol = solve_gram(build_cylinder_system(struct))
    patch = reconstruct_patch(sol)
    u, v = rng.uniform(-4, 4, (2, 25))
    assert np.max(np.abs(patch(u, v) - hopf_cylinder(struct)(u, v))) <= 1e-12
    np.testing.assert_allclose(patch.partial(u, v, 0, 1), -j_apply(patch(u, v)) / struct.a, atol=1e-12)


def test_inconsistent_solution(half):
    bad = np.diag([0.5, 0.5, 0.5, 0.5])
    bad[0, 1] = bad[1, 0] = 0.1
    with pytest.raises(InconsistentSolution):
        reconstruct_curve(GramSolution(half, bad, 0.0, 1.0))
    with pytest.raises(InconsistentSolution):
        reconstruct_curve(GramSolution(half, np.diag([0.6, 0.4, 0.5, 0.5]), 0.0, 1.0))
    with pytest.raises(InconsistentSolution):
        reconstruct_patch(GramSolution(half, np.diag([1.0, 1.0, 0.0, 0.0]), 0.0, 1.0))
