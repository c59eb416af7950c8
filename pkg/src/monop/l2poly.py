"""The L2[0,1] side: complex-power monomial sums, exact inner products,
shifted-Legendre orthonormal coordinates, and a quadrature oracle.

The closed-form inner product <x^s, x^t> = 1/(1+s+conj(t)) is the
workhorse; the quadrature route exists as an independent cross-check and
for pointwise transforms.  Norm computations on integer-exponent
polynomials go through the orthonormal shifted-Legendre basis, never the
raw monomial Gram matrix (Hilbert-type, hopelessly conditioned).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._numeric import c_exp
from .errors import DomainError, ExponentOutOfRange, QuadratureNoConvergence
from .halfplane import require_halfplane

#: absolute error target for the quadrature oracle
QUAD_TARGET = 1e-10
#: exponents closer than this merge into one canonical term
MERGE_EPS = 1e-14


def _canonicalize(terms):
    merged: dict[complex, complex] = {}
    for coeff, expo in terms:
        expo = require_halfplane(complex(expo), "exponent")
        coeff = complex(coeff)
        key = complex(round(expo.real / MERGE_EPS) * MERGE_EPS,
                      round(expo.imag / MERGE_EPS) * MERGE_EPS)
        if key in merged:
            merged[key] += coeff
        else:
            merged[key] = coeff
    out = tuple(sorted(
        ((c, e) for e, c in merged.items() if c != 0),
        key=lambda t: (t[1].real, t[1].imag),
    ))
    return out


@dataclass(frozen=True)
class MonomialSum:
    """Finite linear combination sum_k a_k x^{s_k} with Re s_k > -1/2."""

    terms: tuple

    @classmethod
    def of(cls, terms) -> "MonomialSum":
        return cls(_canonicalize(terms))

    @classmethod
    def monomial(cls, coeff, exponent) -> "MonomialSum":
        return cls.of([(coeff, exponent)])

    def __add__(self, other):
        return MonomialSum.of(self.terms + other.terms)

    def scale(self, c) -> "MonomialSum":
        return MonomialSum.of([(c * a, e) for a, e in self.terms])

    def to_json(self):
        return {"terms": [{"coeff": [a.real, a.imag], "exp": [e.real, e.imag]}
                          for a, e in self.terms]}

    @classmethod
    def from_json(cls, data) -> "MonomialSum":
        return cls.of([(complex(*t["coeff"]), complex(*t["exp"]))
                       for t in data["terms"]])


def l2_inner(f: MonomialSum, h: MonomialSum) -> complex:
    """<f, h> on L2[0,1] in closed form, sum of 1/(1 + s_i + conj(t_j))."""
    total = 0j
    for a, s in f.terms:
        for b, t in h.terms:
            total += a * b.conjugate() / (1 + s + t.conjugate())
    return total


def eval_monomial_sum(f: MonomialSum, x: float):
    """Pointwise value at x in (0,1]; x^s := exp(s ln x)."""
    if not 0 < x <= 1:
        raise DomainError(f"x = {x} not in (0, 1]")
    lx = math.log(x)
    return sum((a * c_exp(s * lx) for a, s in f.terms), 0j)


def quadrature_inner(f: MonomialSum, h: MonomialSum) -> complex:
    """Adaptive quadrature of integral_0^1 f(x) conj(h(x)) dx.

    The integrand can have an integrable endpoint singularity at 0 when
    Re(exponent) < 0; the substitution x = u^k with k chosen from the
    worst combined exponent regularizes it.
    """
    if not f.terms or not h.terms:
        return 0j
    pmin = (min(s.real for _, s in f.terms)
            + min(t.real for _, t in h.terms))
    # need Re(k (p+1) - 1) >= 0 for the worst exponent p = pmin
    k = max(1, math.ceil(1.5 / (1 + pmin)))

    def integrand(u):
        x = u ** k
        if x == 0.0:
            return 0j
        return (k * u ** (k - 1)
                * eval_monomial_sum(f, x)
                * eval_monomial_sum(h, x).conjugate())

    re_val, re_err = integrate.quad(
        lambda u: integrand(u).real, 0.0, 1.0,
        epsabs=1e-12, epsrel=1e-12, limit=400)
    im_val, im_err = integrate.quad(
        lambda u: integrand(u).imag, 0.0, 1.0,
        epsabs=1e-12, epsrel=1e-12, limit=400)
    if re_err + im_err > QUAD_TARGET:
        raise QuadratureNoConvergence(
            f"quadrature error estimate {re_err + im_err:.2e} exceeds "
            f"{QUAD_TARGET:.0e}", error_estimate=re_err + im_err)
    return complex(re_val, im_val)


# ------------------------------------------- shifted-Legendre coordinates

@dataclass(frozen=True)
class LegendreCoords:
    """Coordinates in the orthonormal shifted-Legendre basis of L2[0,1]."""

    degree: int
    coeffs: np.ndarray

    def norm_sq(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)


def _jacobi_matrix(n: int) -> np.ndarray:
    """Multiplication by x in the orthonormal shifted-Legendre basis:
    symmetric tridiagonal with diagonal 1/2 and off-diagonal
    (k+1) / (2 sqrt((2k+1)(2k+3)))."""
    J = np.zeros((n, n))
    np.fill_diagonal(J, 0.5)
    for k in range(n - 1):
        off = (k + 1) / (2 * math.sqrt((2 * k + 1) * (2 * k + 3)))
        J[k, k + 1] = off
        J[k + 1, k] = off
    return J


def monomial_legendre_coords(N: int) -> np.ndarray:
    """Columns m = 0..N hold the Legendre coordinates of x^m (exact while
    the degree stays within the truncation, which it does for m <= N)."""
    J = _jacobi_matrix(N + 1)
    V = np.zeros((N + 1, N + 1))
    v = np.zeros(N + 1)
    v[0] = 1.0
    V[:, 0] = v
    for m in range(1, N + 1):
        v = J @ v
        V[:, m] = v
    return V


def to_legendre(f: MonomialSum, N: int) -> LegendreCoords:
    """Expand an integer-exponent polynomial in the orthonormal basis."""
    for _, e in f.terms:
        m = round(e.real)
        if abs(e.imag) > MERGE_EPS or abs(e.real - m) > MERGE_EPS or not 0 <= m <= N:
            raise ExponentOutOfRange(
                f"exponent {e} is not an integer in 0..{N}")
    V = monomial_legendre_coords(N)
    coeffs = np.zeros(N + 1, dtype=complex)
    for a, e in f.terms:
        coeffs += a * V[:, round(e.real)]
    return LegendreCoords(N, coeffs)
