"""Unitary monomial operators: T x^s = c(s) x^{beta(s)} is unitary on
L2[0,1] exactly when beta is an automorphism of the half-plane and c is
the normalized-kernel coefficient below (Bourdon-Narayan, transferred).
"""

import math
from typing import Callable, Sequence, Tuple

from ._numeric import c_sqrt, conj, unit_phase
from .halfplane import HalfPlaneAutomorphism, kernel_eval
from .operators import AutomorphismMap, CallableWeight, MonomialOperatorSpec


def unitary_coeff(A: HalfPlaneAutomorphism, theta: float, s):
    """c(s) = e^{i theta}/sqrt(1+2 Re beta(0)) * (1+conj(beta(0))+beta(s))/(1+s)."""
    # evaluate everything in the backend of s: the norm estimator calls
    # this weight at a few hundred digits and double-rounded coefficients
    # would wreck the restricted norm
    b0 = A(0 * s)
    root = c_sqrt(1 + b0 + conj(b0))
    return (unit_phase(theta, like=s) / root
            * (1 + conj(b0) + A(s)) / (1 + s))


def build_unitary(A: HalfPlaneAutomorphism, theta: float) -> MonomialOperatorSpec:
    """Spec with beta = A and the weight recovered from the coefficient:
    g(s) = c(s) (1+s) / (1+beta(s))."""

    def g(s):
        return unitary_coeff(A, theta, s) * (1 + s) / (1 + A(s))

    return MonomialOperatorSpec(
        AutomorphismMap(A),
        CallableWeight(g, description=f"unitary(theta={theta}, a={A.a})"),
        provenance="unitary")


def isometry_check(T: MonomialOperatorSpec,
                   samples: Sequence[Tuple[complex, complex]]) -> float:
    """Max residual of 1/(1+s+conj(t)) = c(s) conj(c(t)) / (1+beta(s)+conj(beta(t)))
    over the sample pairs; vanishes exactly for unitary specs."""
    worst = 0.0
    for s, t in samples:
        cs = T.coefficient(s)
        ct = T.coefficient(t)
        lhs = 1 / (1 + s + conj(t))
        rhs = cs * conj(ct) / (1 + T.beta(s) + conj(T.beta(t)))
        worst = max(worst, abs(lhs - rhs))
    return worst


def bourdon_narayan_weight(A: HalfPlaneAutomorphism, theta: float) -> Callable:
    """g(s) = e^{i theta} k_{s0}(s) / ||k_{s0}|| with s0 = A^{-1}(0)."""
    s0 = A.inverse()(0j)
    norm = math.sqrt(kernel_eval(s0, s0).real)

    def g(s):
        return unit_phase(theta, like=s) * kernel_eval(s, s0) / norm

    return g
