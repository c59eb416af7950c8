import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monop.errors import DomainError, ExponentOutOfRange
from monop.l2poly import (MonomialSum, eval_monomial_sum, l2_inner,
                          monomial_legendre_coords, quadrature_inner,
                          to_legendre)

exponents = st.tuples(st.floats(-0.45, 5), st.floats(-5, 5)).map(
    lambda p: complex(*p))
coeffs = st.tuples(st.floats(-3, 3), st.floats(-3, 3)).map(
    lambda p: complex(*p))
sums = st.lists(st.tuples(coeffs, exponents), min_size=1, max_size=5).map(
    MonomialSum.of)


def test_canonicalization_merges_and_drops():
    f = MonomialSum.of([(1, 2), (2, 2), (-3, 2), (1, 3)])
    assert f.terms == ((1 + 0j, 3 + 0j),)
    assert MonomialSum.of([(0, 1)]).terms == ()


def test_exponent_domain():
    with pytest.raises(DomainError):
        MonomialSum.monomial(1, -0.6)


def test_inner_closed_form_values():
    # <x, x> = 1/3, <x, 1> = 1/2, <x^2, x> = 1/4
    x = MonomialSum.monomial(1, 1)
    one = MonomialSum.monomial(1, 0)
    assert abs(l2_inner(x, x) - 1 / 3) < 1e-15
    assert abs(l2_inner(x, one) - 1 / 2) < 1e-15
    assert abs(l2_inner(MonomialSum.monomial(1, 2), x) - 1 / 4) < 1e-15


def test_eval_domain():
    with pytest.raises(DomainError):
        eval_monomial_sum(MonomialSum.monomial(1, 1), 0.0)
    assert abs(eval_monomial_sum(MonomialSum.monomial(2, 3), 0.5) - 0.25) < 1e-15


@given(sums, sums)
@settings(max_examples=40, deadline=None)
def test_quadrature_matches_closed_form(f, h):
    exact = l2_inner(f, h)
    quad = quadrature_inner(f, h)
    assert abs(exact - quad) < 1e-8 * (1 + abs(exact))


def test_quadrature_handles_endpoint_singularity():
    f = MonomialSum.monomial(1, -0.45)
    exact = l2_inner(f, f)       # 1/(1 - 0.9) = 10
    assert abs(quadrature_inner(f, f) - exact) < 1e-7 * (1 + abs(exact))


@given(sums)
@settings(max_examples=40, deadline=None)
def test_norm_positive(f):
    nn = l2_inner(f, f)
    assert abs(nn.imag) < 1e-12 * (1 + abs(nn))
    assert nn.real >= 0


@given(sums, sums)
@settings(max_examples=40, deadline=None)
def test_cauchy_schwarz(f, h):
    lhs = abs(l2_inner(f, h)) ** 2
    rhs = l2_inner(f, f).real * l2_inner(h, h).real
    assert lhs <= rhs * (1 + 1e-10) + 1e-12


def test_json_round_trip():
    f = MonomialSum.of([(1 + 2j, 0.5 + 1j), (3, 2)])
    assert MonomialSum.from_json(f.to_json()) == f


# -------------------------------------------------- Legendre coordinates

def test_legendre_coords_reproduce_monomial_inners():
    # Parseval: monomial Gram in Legendre coordinates equals the Hilbert matrix
    N = 12
    V = monomial_legendre_coords(N)
    G = V.T @ V
    H = np.array([[1 / (1 + m + k) for k in range(N + 1)]
                  for m in range(N + 1)])
    assert np.max(np.abs(G - H)) < 1e-12


def test_to_legendre_parseval():
    f = MonomialSum.of([(1, 0), (-2, 3), (0.5j, 5)])
    coords = to_legendre(f, 8)
    assert abs(coords.norm_sq() - l2_inner(f, f).real) < 1e-12


def test_to_legendre_rejects_bad_exponents():
    with pytest.raises(ExponentOutOfRange):
        to_legendre(MonomialSum.monomial(1, 0.5), 4)
    with pytest.raises(ExponentOutOfRange):
        to_legendre(MonomialSum.monomial(1, 9), 4)
