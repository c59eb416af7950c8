import math
import random

import numpy as np
import pytest

from monop.errors import (BetaRangeError, TabulatedWeightError,
                          UnknownBuiltin)
from monop.hardy import KernelSum, hardy_inner
from monop.l2poly import MonomialSum, l2_inner
from monop.operators import (FlatShift, MonomialOperatorSpec, TableWeight,
                             adjoint_apply, apply, builtin,
                             conjugated_apply_kernel, norm_estimate,
                             spec_from_sequences, weight_from_coeffs)


def test_builtin_hardy_averages_monomials():
    # H x^n = x^n / (n+1)
    H = builtin("hardy")
    for n in range(5):
        img = apply(H, MonomialSum.monomial(1, n))
        assert img.terms == ((1 / (n + 1) + 0j, complex(n)),)


def test_builtin_volterra_integrates():
    # V x^n = x^{n+1} / (n+1)
    V = builtin("volterra")
    for n in range(5):
        img = apply(V, MonomialSum.monomial(1, n))
        assert len(img.terms) == 1
        (c, e), = img.terms
        assert abs(c - 1 / (n + 1)) < 1e-15 and abs(e - (n + 1)) < 1e-15


def test_builtin_mult_x_shifts():
    M = builtin("mult_x")
    img = apply(M, MonomialSum.monomial(2, 3))
    assert img.terms == ((2 + 0j, 4 + 0j),)


def test_builtin_identity_and_unknown():
    I = builtin("identity")
    f = MonomialSum.of([(1, 0.5 + 1j), (2, 3)])
    assert apply(I, f) == f
    with pytest.raises(UnknownBuiltin):
        builtin("nonsense")


def test_flat_shift_domain():
    with pytest.raises(BetaRangeError):
        FlatShift(-0.1)
    assert FlatShift(2j)(1.0) == 1 + 2j


def test_table_weight_guardrails():
    w = TableWeight((1 + 0j, 2 + 0j))
    assert w(1) == 2
    with pytest.raises(TabulatedWeightError):
        w(0.5)
    w2 = w.with_interpolant(lambda s: 7)
    assert w2(0.5) == 7


def test_weight_from_coeffs():
    # g(n) = c_n (1+n)/(1+p_n): Volterra data c_n = 1/(1+n), p_n = n+1
    c = [1 / (1 + n) for n in range(4)]
    p = [n + 1 for n in range(4)]
    w = weight_from_coeffs(c, p)
    for n in range(4):
        assert abs(w(n) - 1 / (2 + n)) < 1e-15


def test_spec_from_sequences_reproduces_data():
    c = [1 / (1 + n) for n in range(4)]
    p = [n + 1 for n in range(4)]
    T = spec_from_sequences(c, p)
    for n, cn in enumerate(c):
        assert abs(T.coefficient(complex(n)) - cn) < 1e-8


def test_beta_range_guard_on_apply():
    import monop.operators as ops
    T = MonomialOperatorSpec(lambda s: s - 1, lambda s: 1 + 0 * s)
    with pytest.raises(BetaRangeError):
        apply(T, MonomialSum.monomial(1, 0))


# -------------------------------------------------------------- adjoint

def test_adjoint_duality_on_kernels():
    # <conj-op k_s, k_u> = conj(<adjoint k_u, k_s>) for the transferred
    # operator on the Hardy side
    rng = random.Random(11)
    for name in ("hardy", "volterra", "mult_x"):
        T = builtin(name)
        for _ in range(20):
            s = complex(10 ** rng.uniform(-1, 1), rng.uniform(-5, 5))
            u = complex(10 ** rng.uniform(-1, 1), rng.uniform(-5, 5))
            lhs = hardy_inner(conjugated_apply_kernel(T, s),
                              KernelSum.kernel(1, u))
            adj = adjoint_apply(T, KernelSum.kernel(1, u))
            # <T~* k_u, k_s> = (T~* k_u)(s)
            rhs = adj(s).conjugate()
            assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))


def test_conjugated_kernel_action_explicit():
    # the conjugated operator sends k_s to g(conj(s)) k_{conj(beta(conj(s)))}
    T = builtin("volterra")
    s = 1 + 2j
    F = conjugated_apply_kernel(T, s)
    (coeff, point), = F.terms
    assert abs(point - (s + 1)) < 1e-14       # flat shift commutes with conj
    assert abs(coeff - 1 / (s.conjugate() + 2)) < 1e-14


# ------------------------------------------------------- norm estimation

def test_norm_identity_is_one():
    for N in (0, 5, 25):
        assert abs(norm_estimate(builtin("identity"), N) - 1.0) < 1e-12


def test_norm_hardy_monotone_and_below_two():
    vals = [norm_estimate(builtin("hardy"), N) for N in (5, 10, 20, 40)]
    assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))
    assert all(v <= 2 + 1e-9 for v in vals)
    assert vals[-1] > 1.7


def test_norm_volterra_value():
    # Volterra norm on L2[0,1] is 2/pi; Galerkin from below
    v = norm_estimate(builtin("volterra"), 30)
    assert v <= 2 / math.pi + 1e-9
    assert v > 2 / math.pi - 1e-3


def test_norm_mult_x_value():
    # multiplication by x has norm 1 (sup of |x| on [0,1]); approached from below
    v = norm_estimate(builtin("mult_x"), 40)
    assert v <= 1 + 1e-9
    assert v > 0.95


def test_norm_scaling_linearity():
    T = builtin("hardy")
    from monop.operators import ExprWeight
    from monop.funcexpr import parse
    T3 = MonomialOperatorSpec(T.beta, ExprWeight(parse("3/(1+s)")))
    a = norm_estimate(T, 15)
    b = norm_estimate(T3, 15)
    assert abs(b - 3 * a) < 1e-8 * (1 + b)


def test_norm_dense_grid_oracle():
    # independent oracle: the Hardy operator image of a random polynomial,
    # Rayleigh quotient <Tf,Tf>/<f,f> must stay below the Galerkin norm
    # at the same degree (which is the sup over that subspace)
    rng = random.Random(5)
    N = 8
    T = builtin("hardy")
    bound = norm_estimate(T, N)
    for _ in range(25):
        f = MonomialSum.of([(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), k)
                            for k in range(N + 1)])
        Tf = apply(T, f)
        q = math.sqrt(l2_inner(Tf, Tf).real / l2_inner(f, f).real)
        assert q <= bound * (1 + 1e-9)
