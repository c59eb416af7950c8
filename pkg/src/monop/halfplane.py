"""Geometry of the half-plane H = {Re s > -1/2}.

Moebius transfer to the unit disk, the reproducing kernel of the
associated Hardy space, and automorphisms of H with their rank-one Pick
factorization.  All formulas are backend-agnostic (see ``_numeric``).
"""

import math
from dataclasses import dataclass

from ._numeric import c_sqrt, conj, unit_phase
from .errors import DomainError

#: Re s = -1/2 is the boundary; points this close to it are rejected
#: because the kernel and inner-product denominators degenerate there.
EDGE_MARGIN = 1e-12


def in_halfplane(s) -> bool:
    return float(s.real) > -0.5 + EDGE_MARGIN


def require_halfplane(s, what="point"):
    """Validate and return ``s`` as a complex number in H."""
    s = complex(s)
    if not in_halfplane(s):
        raise DomainError(f"{what} {s} has Re <= -1/2 (not in the half-plane)")
    return s


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point of H; the universal coordinate of the toolkit."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", require_halfplane(self.value))

    def __complex__(self):
        return self.value


def moebius_lambda(s):
    """The Riemann map s / (s+1) taking H onto the unit disk."""
    return s / (s + 1)


def moebius_lambda_inv(z):
    """Inverse map z / (1-z); defined for |z| < 1."""
    if abs(z) >= 1:
        raise DomainError(f"|z| = {abs(z)} >= 1: not in the unit disk")
    return z / (1 - z)


def kernel_eval(s, u):
    """Reproducing kernel k(s, u) = (1+s)(1+conj(u)) / (1+s+conj(u))."""
    return (1 + s) * (1 + conj(u)) / (1 + s + conj(u))


@dataclass(frozen=True)
class HalfPlaneAutomorphism:
    """Automorphism of H, conjugate of a disk Moebius map by lambda.

    Parametrized on the disk side by b(z) = e^{i theta} (z-a)/(1 - conj(a) z)
    with |a| < 1; then beta = lambda^{-1} o b o lambda.
    """

    theta: float
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))
        object.__setattr__(self, "a", complex(self.a))
        if abs(self.a) >= 1:
            raise DomainError(f"disk parameter |a| = {abs(self.a)} >= 1")

    def disk_eval(self, z):
        a = self.a
        return unit_phase(self.theta, like=z) * (z - a) / (1 - conj(a) * z)

    def __call__(self, s):
        z = self.disk_eval(moebius_lambda(s))
        # b maps the open disk into itself, so no domain check is needed;
        # compute the inverse Moebius directly to stay backend-generic.
        return z / (1 - z)

    def inverse(self) -> "HalfPlaneAutomorphism":
        # b^{-1}(w) = e^{-i theta} (w - a') / (1 - conj(a') w), a' = -a e^{i theta}
        return HalfPlaneAutomorphism(-self.theta, -self.a * unit_phase(self.theta))

    def psi(self, z):
        """The disk-side Pick factor: (1 - conj(b(w)) b(z)) / (1 - conj(w) z)
        = conj(psi(w)) psi(z), normalized so psi(0) > 0."""
        one = 1 - abs(self.a) ** 2
        return c_sqrt(one * (1 + 0j)) / (1 - conj(self.a) * z)

    def factor(self, s):
        """phi with (1 + beta(s) + conj(beta(t))) / (1 + s + conj(t))
        = phi(s) conj(phi(t))."""
        return (1 + self(s)) / (1 + s) * self.psi(moebius_lambda(s))


def automorphism_eval(A: HalfPlaneAutomorphism, s):
    return A(s)


def automorphism_factor(A: HalfPlaneAutomorphism, s):
    return A.factor(s)
