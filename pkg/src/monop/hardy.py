"""The Hardy space H2 of the half-plane {Re s > -1/2}: kernel sums, the
unitary transfer U from L2[0,1] and its inverse, Hardy inner products,
and the boundary-integral norm oracle.

Conventions are fixed once: <k_u, k_s> = k(s, u), and Gram matrices are
indexed with the row given by the second slot.
"""

import math
from dataclasses import dataclass

from scipy import integrate

from .errors import QuadratureNoConvergence
from .halfplane import kernel_eval, require_halfplane
from .l2poly import MERGE_EPS, MonomialSum, quadrature_inner

#: analytic tail bound target for the truncated boundary integral
TAIL_TARGET = 1e-9


def _canonicalize(terms):
    merged: dict[complex, complex] = {}
    for coeff, point in terms:
        point = require_halfplane(complex(point), "kernel point")
        coeff = complex(coeff)
        key = complex(round(point.real / MERGE_EPS) * MERGE_EPS,
                      round(point.imag / MERGE_EPS) * MERGE_EPS)
        merged[key] = merged.get(key, 0j) + coeff
    return tuple(sorted(
        ((c, p) for p, c in merged.items() if c != 0),
        key=lambda t: (t[1].real, t[1].imag),
    ))


@dataclass(frozen=True)
class KernelSum:
    """Finite linear combination sum_k a_k k_{u_k} of reproducing kernels."""

    terms: tuple

    @classmethod
    def of(cls, terms) -> "KernelSum":
        return cls(_canonicalize(terms))

    @classmethod
    def kernel(cls, coeff, point) -> "KernelSum":
        return cls.of([(coeff, point)])

    def __add__(self, other):
        return KernelSum.of(self.terms + other.terms)

    def scale(self, c) -> "KernelSum":
        return KernelSum.of([(c * a, p) for a, p in self.terms])

    def eval(self, s):
        """Pointwise value F(s) = sum a_k k(s, u_k); s may be on the
        closed boundary line Re s = -1/2."""
        return sum((a * kernel_eval(s, u) for a, u in self.terms), 0j)

    def __call__(self, s):
        return self.eval(s)

    def to_json(self):
        return {"terms": [{"coeff": [a.real, a.imag], "point": [p.real, p.imag]}
                          for a, p in self.terms]}

    @classmethod
    def from_json(cls, data) -> "KernelSum":
        return cls.of([(complex(*t["coeff"]), complex(*t["point"]))
                       for t in data["terms"]])


def u_apply(f: MonomialSum) -> KernelSum:
    """The unitary U: x^s |-> k_{conj(s)} / (1+s), extended linearly."""
    return KernelSum.of([(a / (1 + s), s.conjugate()) for a, s in f.terms])


def u_inverse(F: KernelSum) -> MonomialSum:
    """U^{-1}: k_u |-> (1 + conj(u)) x^{conj(u)}."""
    return MonomialSum.of([(c * (1 + u.conjugate()), u.conjugate())
                           for c, u in F.terms])


def u_pointwise(f: MonomialSum, s) -> complex:
    """(Uf)(s) = (1+s) integral_0^1 f(x) x^s dx, via quadrature.

    Cross-checks the closed-form route u_apply(f).eval(s).
    """
    s = require_halfplane(s)
    probe = MonomialSum.monomial(1.0, s.conjugate())
    return (1 + s) * quadrature_inner(f, probe)


def hardy_inner(F: KernelSum, G: KernelSum) -> complex:
    """<F, G> = sum_{ij} a_i conj(b_j) k(t_j, u_i)."""
    total = 0j
    for a, u in F.terms:
        for b, t in G.terms:
            total += a * b.conjugate() * kernel_eval(t, u)
    return total


def _tail_truncation(F: KernelSum) -> float:
    """T with the analytic tail of the boundary integral below TAIL_TARGET.

    On the boundary, |F(-1/2+it)| <= 3 sum |a_i| |1+u_i| =: C once
    |t| >= 2 max(1, |u_i|) + 1, and the tail of the norm integral is then
    bounded by C^2/(pi T).
    """
    if not F.terms:
        return 1.0
    C = 3 * sum(abs(a) * abs(1 + u) for a, u in F.terms)
    t0 = 2 * max(1.0, max(abs(u) for _, u in F.terms)) + 1
    return max(t0, C * C / (math.pi * TAIL_TARGET))


def boundary_norm_sq(F, truncation: float | None = None) -> float:
    """Norm squared via the boundary integral
    (1/2 pi) integral |F(-1/2+it)|^2 / (t^2 + 1/4) dt.

    ``F`` is a KernelSum (certified truncation computed from its data) or
    any callable on the boundary line together with an explicit
    ``truncation``.
    """
    if truncation is None:
        if not isinstance(F, KernelSum):
            raise ValueError("explicit truncation required for a bare callable")
        truncation = _tail_truncation(F)
    fn = F.eval if isinstance(F, KernelSum) else F

    # substitute t = tan(theta): integrand decays like 1/t^2, so the
    # transformed integrand is bounded and smooth up to the endpoints
    half = math.atan(truncation)

    def integrand(theta):
        t = math.tan(theta)
        sec2 = 1 + t * t
        v = fn(complex(-0.5, t))
        return (v.real * v.real + v.imag * v.imag) / (t * t + 0.25) * sec2

    val, err = integrate.quad(integrand, -half, half,
                              epsabs=1e-11, epsrel=1e-11, limit=400)
    if err > 1e-8:
        raise QuadratureNoConvergence(
            f"boundary integral error estimate {err:.2e}", error_estimate=err)
    return val / (2 * math.pi)
