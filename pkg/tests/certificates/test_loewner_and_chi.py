# FILE: tests/certificates/test_loewner_and_chi.py

import numpy as np
import pytest

from switchcert.certificates.chi import chi_term
from switchcert.certificates.loewner import check_negative_semidefinite, loewner_leq
from switchcert.exceptions import CertificateStructureError, InputError
from switchcert.switching.families import FiniteMarkov, FixedSequence, IndependentIID, RateMap, ReflectedMaxWalk


def characteristic_roots(matrix):
    """Eigenvalues from the characteristic polynomial coefficients (n <= 3)."""
    n = matrix.shape[0]
    if n == 1:
        return np.array([matrix[0, 0]])
    trace = np.trace(matrix)
    if n == 2:
        coeffs = [1.0, -trace, np.linalg.det(matrix)]
    else:
        minors = sum(
            matrix[i, i] * matrix[j, j] - matrix[i, j] * matrix[j, i]
            for i in range(3) for j in range(i + 1, 3)
        )
        coeffs = [1.0, -trace, minors, -np.linalg.det(matrix)]
    return np.sort(np.real(np.roots(coeffs)))


def test_equal_matrices_pass_at_zero_tolerance():
    A = np.array([[2.0, 0.5], [0.5, 1.0]])
    report = loewner_leq(A, A)
    assert report.lambda_max == pytest.approx(0.0, abs=1e-15)
    assert report.passed


def test_zero_below_identity():
    report = loewner_leq(np.zeros((2, 2)), np.eye(2))
    assert report.lambda_max == pytest.approx(-1.0)
    assert report.passed


def test_failure_reports_witness():
    report = loewner_leq(np.diag([1.0, -1.0]), np.zeros((2, 2)), label="toy", mode=3)
    assert not report.passed
    assert report.lambda_max == pytest.approx(1.0)
    assert np.allclose(report.witness, [1.0, 0.0])
    assert report.label == "toy" and report.mode == 3


def test_report_serializes_verdict_as_pass():
    dumped = loewner_leq(np.eye(1), np.eye(1)).model_dump(by_alias=True)
    assert dumped["pass"] is True
    assert "passed" not in dumped


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lambda_max_matches_characteristic_polynomial(rng, n):
    for _ in range(25):
        a = rng.standard_normal((n, n))
        b = rng.standard_normal((n, n))
        A, B = a + a.T, b + b.T
        report = loewner_leq(A, B)
        roots = characteristic_roots(A - B)
        assert report.lambda_max == pytest.approx(roots[-1], abs=1e-9)
        assert np.allclose(report.eigenvalues, roots, atol=1e-9)


def test_loewner_rejects_bad_input():
    with pytest.raises(InputError):
        loewner_leq([[0.0, 1.0], [0.0, 0.0]], np.zeros((2, 2)))
    with pytest.raises(InputError):
        loewner_leq(np.eye(2), np.eye(3))


def test_relative_slack_widens_tolerance():
    M = np.diag([-1e6, 1e-5])
    assert not check_negative_semidefinite(M).passed
    assert check_negative_semidefinite(M, relative_slack=True).passed


def test_chi_vanishes_for_identity_markov_chain(make_pd):
    P = [make_pd(3), make_pd(3)]
    chi = chi_term(FiniteMarkov(np.eye(2)), P, 1, RateMap.constant(7.0, 2))
    assert np.array_equal(chi.matrix, np.zeros((3, 3)))
    assert not chi.conservative


def test_chi_for_scalar_iid_modes():
    chi = chi_term(IndependentIID([0.5, 0.5]), [np.array([[2.0]]), np.array([[1.0]])], 0, RateMap.constant(1.0, 2))
    assert chi.matrix[0, 0] == pytest.approx(-0.5)


def test_chi_for_reflected_walk_out_of_mode_zero(make_pd):
    P1 = make_pd(2)
    P0 = P1 + make_pd(2)
    chi = chi_term(ReflectedMaxWalk(), [P0, P1], 0, RateMap((50.0, 1.0), 50.0))
    assert np.allclose(chi.matrix, 25.0 * (P1 - P0))
    assert not chi.conservative


def test_chi_bound_out_of_mode_one(make_pd):
    P1 = make_pd(2)
    P0 = P1 + make_pd(2)
    chi = chi_term(ReflectedMaxWalk(), [P0, P1], 1, RateMap((50.0, 4.0), 50.0))
    assert chi.conservative
    assert np.allclose(chi.matrix, 2.0 * (P0 - P1))


def test_chi_bound_requires_ordered_P():
    P0, P1 = np.eye(2), 2 * np.eye(2)
    with pytest.raises(CertificateStructureError):
        chi_term(ReflectedMaxWalk(), [P0, P1], 1, RateMap((50.0, 1.0), 50.0))


def test_chi_needs_every_mode_of_the_family():
    with pytest.raises(CertificateStructureError):
        chi_term(IndependentIID([0.5, 0.5]), [np.eye(2)], 0, RateMap.constant(1.0, 2))


def test_chi_for_exhausted_fixed_sequence_is_zero():
    chi = chi_term(FixedSequence([0]), [np.eye(2)], 0, RateMap.constant(3.0, 1))
    assert not np.any(chi.matrix)
