import cmath
import math

import pytest
from hypothesis import given, strategies as st

from monop.errors import DomainError
from monop.halfplane import (HalfPlaneAutomorphism, HalfPlanePoint,
                             in_halfplane, kernel_eval, moebius_lambda,
                             moebius_lambda_inv, require_halfplane)

points = st.complex_numbers(min_magnitude=0, max_magnitude=40,
                            allow_nan=False, allow_infinity=False).map(
    lambda z: complex(abs(z.real) - 0.49, z.imag))


def test_membership():
    assert in_halfplane(0j)
    assert in_halfplane(complex(-0.49, 100))
    assert not in_halfplane(complex(-0.5, 0))
    assert not in_halfplane(complex(-2, 1))


def test_require_and_point():
    assert require_halfplane(1 + 2j) == 1 + 2j
    with pytest.raises(DomainError):
        require_halfplane(-0.5)
    with pytest.raises(DomainError):
        HalfPlanePoint(-1.0)
    assert complex(HalfPlanePoint(0.25j + 1)) == 1 + 0.25j


@given(points)
def test_lambda_maps_into_disk_and_inverts(s):
    z = moebius_lambda(s)
    assert abs(z) < 1
    assert abs(moebius_lambda_inv(z) - s) <= 1e-9 * (1 + abs(s))


def test_lambda_inv_rejects_outside_disk():
    with pytest.raises(DomainError):
        moebius_lambda_inv(1 + 0j)


def test_kernel_explicit_values():
    # k(s, u) = (1+s)(1+conj(u)) / (1+s+conj(u))
    assert kernel_eval(0j, 0j) == 1
    assert abs(kernel_eval(1 + 0j, 1 + 0j) - 4 / 3) < 1e-15
    s, u = 0.3 + 0.7j, 1.2 - 0.4j
    expected = (1 + s) * (1 + u.conjugate()) / (1 + s + u.conjugate())
    assert kernel_eval(s, u) == expected


@given(points, points)
def test_kernel_hermitian(s, u):
    assert abs(kernel_eval(s, u) - kernel_eval(u, s).conjugate()) < 1e-9 * (
        1 + abs(kernel_eval(s, u)))


def test_automorphism_rejects_large_a():
    with pytest.raises(DomainError):
        HalfPlaneAutomorphism(0.0, 1.0)


disk_params = st.tuples(
    st.floats(-10, 10, allow_nan=False),
    st.complex_numbers(max_magnitude=0.95, allow_nan=False,
                       allow_infinity=False))


@given(disk_params, points)
def test_automorphism_preserves_halfplane(params, s):
    A = HalfPlaneAutomorphism(*params)
    assert in_halfplane(A(s))


@given(disk_params, points)
def test_automorphism_inverse(params, s):
    A = HalfPlaneAutomorphism(*params)
    w = A(s)
    assert abs(A.inverse()(w) - s) < 1e-7 * (1 + abs(s)) * (1 + abs(w))


@given(disk_params, points, points)
def test_pick_factorization(params, s, t):
    # (1 + beta(s) + conj(beta(t))) / (1 + s + conj(t)) = phi(s) conj(phi(t))
    A = HalfPlaneAutomorphism(*params)
    lhs = (1 + A(s) + A(t).conjugate()) / (1 + s + t.conjugate())
    rhs = A.factor(s) * A.factor(t).conjugate()
    assert abs(lhs - rhs) < 1e-7 * (1 + abs(lhs))


def test_identity_automorphism():
    A = HalfPlaneAutomorphism(0.0, 0.0)
    for s in (0j, 1 + 2j, -0.4 + 9j):
        assert abs(A(s) - s) < 1e-14 * (1 + abs(s))
        assert abs(A.factor(s) - 1) < 1e-14
