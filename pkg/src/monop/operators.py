"""Monomial operators proper: T x^s = (1+beta(s))/(1+s) g(s) x^{beta(s)}.

A spec is the pair (beta, g) plus provenance.  Application, the adjoint
weighted-composition action on kernels, built-in examples, and Galerkin
norm estimation live here.

The norm estimator solves the generalized eigenproblem (M, G) with G the
monomial Gram (Hilbert) matrix.  Both matrices are Cauchy-like and the
pencil is violently ill-conditioned, so the whole computation -- symbol
and weight evaluation included -- runs in gmpy2 arithmetic at a precision
that grows linearly with the degree.  Double-rounded weights are not a
smaller-error version of the same problem: they define a nearby operator
whose restricted norm genuinely explodes, so the high-precision path is
load-bearing, not cosmetic.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from ._numeric import conj, is_mp, to_complex
from .errors import (BetaRangeError, EigenFailure, TabulatedWeightError,
                     UnknownBuiltin)
from .funcexpr import FuncExpr, evaluate, parse
from .halfplane import EDGE_MARGIN, HalfPlaneAutomorphism, require_halfplane
from .l2poly import MonomialSum
from .hardy import KernelSum
from .pick import SchurInterpolant, np_interpolate


# ------------------------------------------------------ map descriptors

@dataclass(frozen=True)
class FlatShift:
    """beta(s) = s + tau with Re tau >= 0."""

    tau: complex

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        if self.tau.real < 0:
            raise BetaRangeError(
                f"flat shift with Re tau = {self.tau.real} < 0 maps N out of "
                "the half-plane; such operators are never bounded")

    def __call__(self, s):
        return s + self.tau


@dataclass(frozen=True)
class AutomorphismMap:
    auto: HalfPlaneAutomorphism

    def __call__(self, s):
        return self.auto(s)


@dataclass(frozen=True)
class ExprMap:
    expr: FuncExpr

    def __call__(self, s):
        return evaluate(self.expr, s)


@dataclass(frozen=True)
class InterpolantMap:
    interp: SchurInterpolant

    def __call__(self, s):
        return self.interp(s)


# --------------------------------------------------- weight descriptors

@dataclass(frozen=True)
class ExprWeight:
    expr: FuncExpr

    def __call__(self, s):
        return evaluate(self.expr, s)


@dataclass(frozen=True)
class TableWeight:
    """Weight known on N only.  Querying off the integers requires an
    explicit interpolant; silent extrapolation is forbidden because the
    numerics cannot certify Nevanlinna-class uniqueness."""

    values: tuple
    interpolant: Optional[Callable] = None

    def __call__(self, s):
        x = to_complex(s)
        n = round(x.real)
        if abs(x.imag) <= 1e-12 and abs(x.real - n) <= 1e-12 and 0 <= n < len(self.values):
            return self.values[n]
        if self.interpolant is not None:
            return self.interpolant(s)
        raise TabulatedWeightError(
            f"tabulated weight queried at {x} off its table; attach an "
            "interpolant first")

    def with_interpolant(self, fn) -> "TableWeight":
        return TableWeight(self.values, fn)


@dataclass(frozen=True)
class CallableWeight:
    fn: Callable
    description: str = ""

    def __call__(self, s):
        return self.fn(s)


def involuted(fn):
    """h(s) := conj(fn(conj(s))) -- the check involution, backend-generic."""
    def checked(s):
        return conj(fn(conj(s)))
    return checked


# ------------------------------------------------------------- the spec

@dataclass(frozen=True)
class MonomialOperatorSpec:
    """The pair (beta, g) determining T x^s = (1+beta(s))/(1+s) g(s) x^{beta(s)}."""

    beta: Callable
    g: Callable
    provenance: str = "custom"

    def beta_at(self, s):
        """beta(s), verified to land in the half-plane."""
        value = self.beta(s)
        if float(value.real) <= -0.5 + EDGE_MARGIN:
            raise BetaRangeError(
                f"beta({to_complex(s)}) = {to_complex(value)} left the half-plane")
        return value

    def coefficient(self, s):
        """(1 + beta(s))/(1 + s) g(s), the multiplier of x^{beta(s)}."""
        return (1 + self.beta_at(s)) / (1 + s) * self.g(s)


def weight_from_coeffs(c, p) -> TableWeight:
    """g(n) = c_n (1+n) / (1+p_n) from tabulated operator data."""
    if len(c) != len(p):
        raise ValueError("coefficient and power sequences differ in length")
    values = []
    for n, (cn, pn) in enumerate(zip(c, p)):
        pn = require_halfplane(pn, f"p_{n}")
        values.append(complex(cn) * (1 + n) / (1 + pn))
    return TableWeight(tuple(values))


def spec_from_sequences(c, p, tol: float = 1e-10) -> MonomialOperatorSpec:
    """Build a spec from tabulated (c_n, p_n): beta by NP interpolation on
    the nodes 0..len(p)-1, g tabulated.  Verifies the reproduction
    invariant g(n)(1+beta(n))/(1+n) = c_n."""
    nodes = list(range(len(p)))
    beta = InterpolantMap(np_interpolate(nodes, p))
    g = weight_from_coeffs(c, p)
    spec = MonomialOperatorSpec(beta, g, provenance="tabulated")
    for n, cn in enumerate(c):
        got = spec.coefficient(complex(n))
        if abs(got - cn) > tol * (1 + abs(cn)):
            raise EigenFailure(
                f"tabulated spec fails to reproduce c_{n}: {got} vs {cn}")
    return spec


def apply(T: MonomialOperatorSpec, f: MonomialSum) -> MonomialSum:
    """Termwise image of a monomial sum under T."""
    out = []
    for a, s in f.terms:
        out.append((a * T.coefficient(s), T.beta_at(s)))
    return MonomialSum.of(out)


def adjoint_apply(T: MonomialOperatorSpec, F) -> Callable:
    """The adjoint on the Hardy side: s |-> check(g)(s) * F(check(beta)(s)).

    ``F`` is a KernelSum or any evaluable function on the half-plane; the
    result is a pointwise evaluator, not generally a finite kernel sum.
    """
    g_check = involuted(T.g)
    beta_check = involuted(T.beta)
    F_eval = F.eval if isinstance(F, KernelSum) else F

    def value(s):
        w = beta_check(s)
        if float(w.real) <= -0.5 + EDGE_MARGIN:
            raise BetaRangeError(
                f"check(beta)({to_complex(s)}) = {to_complex(w)} left the half-plane")
        return g_check(s) * F_eval(w)

    return value


def conjugated_apply_kernel(T: MonomialOperatorSpec, s) -> KernelSum:
    """The Hardy-side conjugated operator on kernels:
    U T U^* k_s = g(conj(s)) k_{check(beta)(s)}."""
    s = require_halfplane(s)
    point = conj(T.beta_at(conj(s)))
    return KernelSum.of([(T.g(s.conjugate()), point)])


# ------------------------------------------------------ norm estimation

def _hp_digits(N: int) -> int:
    # Hilbert-matrix conditioning grows like 10^(1.53 N); leave slack for
    # the triangular solves.
    return int(1.7 * N) + 60


def norm_estimate(T: MonomialOperatorSpec, N: int,
                  digits: Optional[int] = None) -> float:
    """Exact operator norm of T restricted to span{1, x, ..., x^N}.

    Largest generalized eigenvalue of (M, G): G the monomial Gram matrix,
    M the Gram of the image monomials weighted by the coefficients of
    eqn (1+beta(n))/(1+n) g(n).  Solved by a high-precision congruence
    G = L L* and a dense Hermitian eigensolve on L^{-1} M L^{-*}, whose
    entries are O(norm^2) and safe in doubles.
    """
    if N < 0:
        raise ValueError("degree must be >= 0")
    if digits is None:
        digits = _hp_digits(N)
    n = N + 1
    ctx = gmpy2.get_context()
    old_precision = ctx.precision
    ctx.precision = int(digits * 3.33) + 16
    try:
        betas = []
        ds = []
        for k in range(n):
            sk = mpc(k, 0)
            bk = T.beta(sk)
            if not is_mp(bk):
                bk = mpc(bk)
            if float(bk.real) <= -0.5 + EDGE_MARGIN:
                raise BetaRangeError(
                    f"beta({k}) = {to_complex(bk)} left the half-plane")
            gk = T.g(sk)
            if not is_mp(gk):
                gk = mpc(gk)
            betas.append(bk)
            ds.append((1 + bk) / (1 + k) * gk)

        one = mpfr(1)
        G = [[one / (1 + m + k) for k in range(n)] for m in range(n)]
        M = [[ds[m].conjugate() * ds[k] / (1 + betas[k] + betas[m].conjugate())
              for k in range(n)] for m in range(n)]

        # Cholesky G = L L^T (real, exact data: cannot fail in exact
        # arithmetic; a nonpositive pivot means the precision was blown)
        L = [[mpfr(0)] * n for _ in range(n)]
        for i in range(n):
            Li = L[i]
            for j in range(i):
                acc = G[i][j]
                Lj = L[j]
                for t in range(j):
                    acc -= Li[t] * Lj[t]
                Li[j] = acc / Lj[j]
            acc = G[i][i]
            for t in range(i):
                acc -= Li[t] * Li[t]
            if acc <= 0:
                raise EigenFailure(
                    f"Gram Cholesky pivot {i} went nonpositive; raise digits "
                    f"(currently {digits})")
            Li[i] = gmpy2.sqrt(acc)

        def forward_solve(rows):
            out = [None] * n
            for i in range(n):
                Li = L[i]
                row = rows[i][:]
                for t in range(i):
                    lit = Li[t]
                    Xt = out[t]
                    for j in range(n):
                        row[j] -= lit * Xt[j]
                inv = one / Li[i]
                out[i] = [v * inv for v in row]
            return out

        X = forward_solve(M)                                   # L^{-1} M
        XH = [[X[j][i].conjugate() for j in range(n)] for i in range(n)]
        Y = forward_solve(XH)                                  # L^{-1} M^* L^{-T}
        B = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                B[i, j] = to_complex(Y[j][i].conjugate())
    finally:
        ctx.precision = old_precision

    if not np.all(np.isfinite(B)):
        raise EigenFailure("pencil reduction produced non-finite entries")
    if np.max(np.abs(B)) > 1e12:
        raise EigenFailure(
            "pencil reduction lost all accuracy; raise digits "
            f"(currently {digits})")
    try:
        w = np.linalg.eigvalsh(0.5 * (B + B.conjugate().T))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return math.sqrt(max(float(w[-1]), 0.0))


# ------------------------------------------------------------- builtins

_BUILTINS = {
    "hardy": ("1/(1+s)", 0),
    "volterra": ("1/(s+2)", 1),
    "mult_x": ("(1+s)/(2+s)", 1),
    "identity": ("1", 0),
}


def builtin(name: str) -> MonomialOperatorSpec:
    """Built-in specs: hardy, volterra, mult_x, identity."""
    try:
        g_text, tau = _BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(
            f"unknown builtin {name!r}; choose from {sorted(_BUILTINS)}") from None
    return MonomialOperatorSpec(
        FlatShift(tau), ExprWeight(parse(g_text)), provenance=f"builtin:{name}")
