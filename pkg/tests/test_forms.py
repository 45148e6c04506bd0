import numpy as np
import pytest

from thetaforms.forms import (
    block_embed,
    block_pullback_residuals,
    genus1_constants,
    genus1_record,
    hodge_coefficients,
    imag_inverse_dbar,
    imag_inverse_dbar_fd,
    pair_basis,
    siegel_metric_form,
    structure_difference,
    theta_coefficients,
    theta_fs_form,
    theta_fs_form_fd,
)
from thetaforms.siegel import SiegelPoint, SplitMix64, cocycle_det, mobius_action, \
    random_siegel_point, standard_generators
from thetaforms.theta import TruncationPolicy

PI = np.pi
TAU_I = SiegelPoint.from_matrix(np.array([[1j]]))
TAU_2I = SiegelPoint.from_matrix(np.array([[2j]]))

# frozen from the proof-chain algebra: H = (w(w_xx+w_yy) - w_x^2 - w_y^2) / (4 w^2)
H_THETA_AT_I = 0.29932924684328804


def test_pair_basis_order():
    basis = pair_basis(2)
    assert basis.pairs == ((0, 0), (1, 0), (1, 1))
    assert pair_basis(3).n == 6


def test_siegel_form_genus1():
    np.testing.assert_allclose(siegel_metric_form(TAU_I).matrix, [[1.0]], atol=1e-14)
    np.testing.assert_allclose(siegel_metric_form(TAU_2I).matrix, [[0.25]], atol=1e-14)


def test_siegel_form_genus2_identity_point():
    pt = SiegelPoint.from_matrix(1j * np.eye(2))
    np.testing.assert_allclose(
        siegel_metric_form(pt).matrix, np.diag([1.0, 2.0, 1.0]), atol=1e-13
    )


def test_siegel_form_positive_definite():
    for g in (1, 2, 3):
        pt = random_siegel_point(g, 400 + g)
        assert siegel_metric_form(pt).min_eigenvalue() > 0.0


def test_theta_fs_form_genus1_value():
    h = theta_fs_form(TAU_I)
    assert h.matrix[0, 0].real == pytest.approx(H_THETA_AT_I, abs=1e-6)
    assert abs(h.matrix[0, 0].imag) < 1e-12


def test_theta_fs_form_matches_fd():
    for g in (1, 2, 3):
        for k in range(5):
            pt = random_siegel_point(g, 500 + 10 * g + k)
            analytic = theta_fs_form(pt).matrix
            stencil = theta_fs_form_fd(pt).matrix
            scale = np.max(np.abs(analytic))
            assert np.max(np.abs(analytic - stencil)) <= 1e-5 * max(scale, 1e-3)


def test_fd_raw_stencil_is_nearly_hermitian():
    # every entry comes from its own stencil, so the Hermitian defect of the
    # raw matrix measures consistency of the Wirtinger combination
    from thetaforms.forms import _fd_hessian_matrix, _frozen_w_evaluator
    from thetaforms.theta import DEFAULT_POLICY

    pt = random_siegel_point(2, 650)
    raw = _fd_hessian_matrix(_frozen_w_evaluator(pt, DEFAULT_POLICY), pair_basis(2), 2, 1e-3)
    assert np.max(np.abs(raw - raw.conj().T)) < 1e-6


def test_theta_fs_form_positive_semidefinite():
    for g in (1, 2, 3):
        for k in range(10):
            pt = random_siegel_point(g, 600 + 10 * g + k)
            assert theta_fs_form(pt).min_eigenvalue() >= -1e-9


def test_theta_fs_descends_genus1():
    # a form that descends pulls back along the action:
    # H(M(tau)) |d M(tau)/d tau|^2 = H(tau) with derivative (c tau + d)^-2
    policy = TruncationPolicy(tol=1e-13)
    pt = SiegelPoint.from_matrix(np.array([[0.3 + 1.1j]]))
    h_here = theta_fs_form(pt, policy).matrix[0, 0].real
    for m in standard_generators(1):
        moved = mobius_action(m, pt)
        jac = 1.0 / cocycle_det(m, pt) ** 2
        h_moved = theta_fs_form(moved, policy).matrix[0, 0].real
        assert abs(h_moved * abs(jac) ** 2 - h_here) <= 1e-6 * h_here


def test_theta_coefficients_square_lattice():
    sigma = theta_coefficients(TAU_I)
    assert sigma[0, 0] == pytest.approx(-PI, abs=1e-5)


def test_hodge_coefficients():
    assert hodge_coefficients(TAU_I)[0, 0] == pytest.approx(-PI)
    assert hodge_coefficients(TAU_2I)[0, 0] == pytest.approx(-PI / 2)
    pt = SiegelPoint.from_matrix(1j * np.eye(2))
    np.testing.assert_allclose(hodge_coefficients(pt), -PI * np.eye(2), atol=1e-13)


def test_structure_difference_square_lattice_vs_elsewhere():
    assert abs(structure_difference(TAU_I)[0, 0]) < 1e-6
    assert abs(structure_difference(TAU_2I)[0, 0]) > 1e-3


def test_structure_difference_block_diagonal_restriction():
    z = 2j
    pt = SiegelPoint.from_matrix(np.diag([z, 1j]))
    small = SiegelPoint.from_matrix(np.array([[z]]))
    big_diff = structure_difference(pt)
    small_diff = structure_difference(small)
    assert abs(big_diff[0, 0] - small_diff[0, 0]) < 1e-8


def test_structure_difference_symmetric_and_continuous():
    pt = random_siegel_point(2, 700)
    diff = structure_difference(pt)
    assert np.array_equal(diff, diff.T)
    bumped_mat = pt.tau.copy()
    bumped_mat[0, 0] += 1e-6 + 1e-6j
    bumped = structure_difference(SiegelPoint.from_matrix(bumped_mat))
    assert np.max(np.abs(bumped - diff)) < 1e-4


def test_coefficient_paths_agree():
    from thetaforms.nullwert import enumerate_half_characteristics
    from thetaforms.theta import second_order_jet

    for g in (1, 2):
        pt = random_siegel_point(g, 710 + g)
        jets = [
            second_order_jet(np.array(alpha, dtype=np.float64) / 2.0,
                             np.zeros(g, dtype=np.complex128), pt)
            for alpha in enumerate_half_characteristics(g)
        ]
        w = sum(abs(j.value) ** 2 for j in jets)
        hess_route = sum(np.conj(j.value) * j.hess_z for j in jets) / (2.0 * w)
        heat_route = (2j * PI * (1.0 + np.eye(g)) / w) * sum(
            np.conj(j.value) * j.dtau for j in jets
        )
        assert np.max(np.abs(hess_route - heat_route) / (1.0 + np.abs(hess_route))) < 1e-9


def test_inverse_derivative_identity():
    for g in (1, 2, 3):
        pt = random_siegel_point(g, 720 + g)
        analytic = imag_inverse_dbar(pt)
        stencil = imag_inverse_dbar_fd(pt)
        assert np.max(np.abs(analytic - stencil) / (1.0 + np.abs(analytic))) < 1e-6


def test_genus1_constants():
    a, b, c = genus1_constants()
    assert a == pytest.approx(1.08643481, abs=1e-7)
    assert abs(a - 4 * PI * b) < 1e-8
    assert 4 * PI * c - 7 * b == pytest.approx(0.4823, abs=5e-4)
    assert 4 * PI * c - 7 * b > 0.0


def test_genus1_record_at_i():
    rec = genus1_record(1j)
    assert rec.w == pytest.approx(1.1803405990160967, abs=1e-9)
    assert rec.w_x == pytest.approx(0.0, abs=1e-8)
    assert rec.w_y == pytest.approx(-rec.w / 2.0, abs=1e-8)
    assert rec.lhs == pytest.approx(1.66812, abs=1e-4)
    assert rec.rhs == pytest.approx(0.69660, abs=1e-5)
    assert rec.lhs - rec.rhs == pytest.approx(0.97152, abs=1e-3)
    assert rec.ratio == pytest.approx(2.3947, abs=5e-3)
    assert rec.coeff_siegel == pytest.approx(PI)


def test_genus1_record_consistent_with_fs_form():
    rec = genus1_record(0.25 + 1.3j)
    pt = SiegelPoint.from_matrix(np.array([[0.25 + 1.3j]]))
    coeff = 8 * PI * theta_fs_form(pt).matrix[0, 0].real
    assert rec.coeff_theta == pytest.approx(coeff, rel=1e-6)
    fd = 8 * PI * theta_fs_form_fd(pt).matrix[0, 0].real
    assert rec.coeff_theta == pytest.approx(fd, rel=1e-5)


def test_genus1_record_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        genus1_record(1 - 1j)


def test_block_embed_shape():
    pt = block_embed(1j, SiegelPoint.from_matrix(np.array([[1j]])))
    np.testing.assert_allclose(pt.tau, 1j * np.eye(2), atol=0)
    prime = random_siegel_point(2, 5)
    embedded = block_embed(0.2 + 0.9j, prime)
    assert np.array_equal(embedded.tau, embedded.tau.T)
    assert np.all(embedded.tau[0, 1:] == 0)
    assert embedded.im_min_eigenvalue() > 0


def test_block_pullback_at_square_lattice():
    theta_resid, siegel_resid = block_pullback_residuals(
        1j, SiegelPoint.from_matrix(np.array([[1j]]))
    )
    assert theta_resid < 1e-7
    assert siegel_resid < 1e-7


def test_block_pullback_random_points():
    rng = SplitMix64(9)
    for g in (2, 3):
        for _ in range(5):
            z = complex(0.5 * rng.uniform_sym(), 0.5 + 1.5 * rng.uniform())
            prime = random_siegel_point(g - 1, rng.next_u64())
            theta_resid, siegel_resid = block_pullback_residuals(z, prime)
            assert theta_resid < 1e-6
            assert siegel_resid < 1e-6


def test_splitting_of_nullwert_components():
    from thetaforms.nullwert import enumerate_half_characteristics
    from thetaforms.theta import second_order_value

    rng = SplitMix64(19)
    for g in (2, 3):
        z = complex(0.5 * rng.uniform_sym(), 0.5 + 1.5 * rng.uniform())
        prime = random_siegel_point(g - 1, rng.next_u64())
        big = block_embed(z, prime)
        small = SiegelPoint.from_matrix(np.array([[z]], dtype=np.complex128))
        for alpha in enumerate_half_characteristics(g):
            u = np.array(alpha, dtype=np.float64) / 2.0
            whole = second_order_value(u, np.zeros(g, dtype=np.complex128), big)
            left = second_order_value(u[:1], np.zeros(1, dtype=np.complex128), small)
            right = second_order_value(u[1:], np.zeros(g - 1, dtype=np.complex128), prime)
            assert abs(whole - left * right) <= 1e-10 * max(abs(left * right), 1e-6)
