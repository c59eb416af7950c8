import math
import random

import numpy as np
import pytest
from scipy import integrate

from monop.errors import DomainError, ReTauNegative
from monop.flatbound import (BoundaryProfile, ScanGrid, carleson_sup,
                             flat_verdict, halfplane_comparison,
                             poisson_integral, poisson_kernel)
from monop.funcexpr import parse

SMALL_SCAN = ScanGrid(sigma_min=1e-2, sigma_max=1e2, n_sigma=7,
                      t_max=20.0, n_t=9, jobs=2)


def test_poisson_kernel_values_and_domain():
    assert abs(poisson_kernel(1.0, 0.0, 0.0) - 1 / math.pi) < 1e-15
    with pytest.raises(DomainError):
        poisson_kernel(0.0, 0.0, 1.0)


def test_poisson_normalization():
    one = BoundaryProfile(lambda y: 1.0, decay_hint=0.0)
    for sigma in np.geomspace(1e-2, 1e2, 10):
        for t in np.linspace(-30, 30, 10):
            v = poisson_integral(one, float(sigma), float(t))
            assert abs(v - 1.0) < 1e-8


def test_poisson_integral_trapezoid_oracle():
    profile = BoundaryProfile.from_expr(parse("1/(1+s)"))
    sigma, t = 0.7, 1.3
    val = poisson_integral(profile, sigma, t)
    ys = np.linspace(-4000, 4000, 2_000_001)
    dens = sigma / (math.pi * (sigma ** 2 + (ys - t) ** 2))
    gs = 1.0 / (0.25 + ys ** 2)
    ref = float(np.trapezoid(dens * gs, ys))
    assert abs(val - ref) < 1e-5 * (1 + ref)


def test_poisson_harmonicity_mean_value():
    # P[gsq] is harmonic: the value at sigma is the Poisson average of the
    # values at sigma' < sigma along the line
    profile = BoundaryProfile.from_expr(parse("1/(1+s)"))
    inner, outer = 0.5, 2.0
    t0 = 0.4
    target = poisson_integral(profile, outer, t0)

    def integrand(y):
        return (poisson_kernel(outer - inner, t0, y)
                * poisson_integral(profile, inner, y))

    avg, _ = integrate.quad(integrand, -60, 60, limit=200)
    assert abs(avg - target) < 1e-4 * (1 + target)


def test_halfplane_comparison_nonpositive():
    rng = random.Random(1)
    for _ in range(200):
        rho = 10 ** rng.uniform(-3, 2)
        sigma = rho * 10 ** rng.uniform(0, 2)
        assert halfplane_comparison(rho, sigma) <= 0
    with pytest.raises(DomainError):
        halfplane_comparison(2.0, 1.0)


def test_carleson_sup_example_bound():
    # weight 1/((1+s)(s+1/2)^c): Carleson constant below the closed bound
    for c in (0.1, 0.3):
        profile = BoundaryProfile.from_expr(parse(f"1/((1+s)*(s+1/2)^{c})"))
        tau = 1.0
        sup = carleson_sup(profile, tau, SMALL_SCAN)
        sigma_min = SMALL_SCAN.sigma_min
        bound = (8 / (1 - 2 * c) + 2 * math.pi) / (math.pi * sigma_min)
        assert 0 < sup <= bound


def test_flat_verdict_bounded_example():
    g = parse("1/((1+s)*(s+1/2)^0.25)")
    verdict = flat_verdict(g, 1.0, SMALL_SCAN)
    assert verdict.status == "bounded"
    assert verdict.samples


def test_flat_verdict_monotone_domination():
    # a pointwise-smaller profile yields a smaller sup on the same grid
    v1 = flat_verdict(parse("1/(1+s)"), 1.0, SMALL_SCAN)
    v2 = flat_verdict(parse("2/(1+s)"), 1.0, SMALL_SCAN)
    assert v2.sup >= v1.sup
    assert abs(v2.sup - 4 * v1.sup) < 1e-6 * v2.sup


def test_flat_verdict_zero_shift_bounded():
    verdict = flat_verdict(parse("1/(1+s)"), 0.0, SMALL_SCAN)
    assert verdict.status == "bounded"
    assert abs(verdict.sup - 2.0) < 1e-6     # sup of 1/|1+s| on H is 2


def test_flat_verdict_zero_shift_unbounded():
    verdict = flat_verdict(parse("1/(s+1/2)^0.3"), 0.0, SMALL_SCAN)
    assert verdict.status == "unbounded"
    assert verdict.witness is not None


def test_flat_verdict_negative_shift_rejected():
    with pytest.raises(ReTauNegative):
        flat_verdict(parse("1"), -0.5)


def test_imaginary_shift_reduces_to_real_part():
    a = flat_verdict(parse("1/(1+s)"), 1.0, SMALL_SCAN)
    b = flat_verdict(parse("1/(1+s)"), 1.0 + 5j, SMALL_SCAN)
    assert a.status == b.status == "bounded"
    assert abs(a.sup - b.sup) < 1e-12
