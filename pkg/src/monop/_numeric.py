"""Backend-agnostic complex helpers.

Every geometric formula in the package is written against plain
arithmetic (+, -, *, /, conjugate) plus the handful of transcendental
functions below, so the same code runs on Python ``complex`` and on
``gmpy2`` multiprecision numbers.  The high-precision path matters: the
Galerkin norm machinery has to evaluate symbol maps and weights at a few
hundred digits, because the monomial Gram matrix is Hilbert-type and
double-rounded inputs already perturb the restricted norm beyond repair.
"""

import cmath

import gmpy2
from gmpy2 import mpc, mpfr

MP_TYPES = (mpc, mpfr)


def is_mp(x):
    return isinstance(x, MP_TYPES)


def c_exp(x):
    return gmpy2.exp(x) if is_mp(x) else cmath.exp(x)


def c_log(x):
    """Principal branch."""
    return gmpy2.log(x) if is_mp(x) else cmath.log(x)


def c_sqrt(x):
    return gmpy2.sqrt(x) if is_mp(x) else cmath.sqrt(x)


def conj(x):
    return x.conjugate()


def re(x):
    return x.real if isinstance(x, (complex, *MP_TYPES)) else float(x)


def im(x):
    return x.imag if isinstance(x, (complex, *MP_TYPES)) else 0.0


def unit_phase(theta, like=None):
    """e^{i theta} in the backend of ``like`` (or complex by default)."""
    if like is not None and is_mp(like):
        return gmpy2.exp(mpc(0, theta))
    return cmath.exp(1j * theta)


def to_complex(x):
    """Collapse any backend value to a Python complex."""
    if isinstance(x, mpc):
        return complex(float(x.real), float(x.imag))
    if isinstance(x, mpfr):
        return complex(float(x), 0.0)
    return complex(x)


def cpow(x, p):
    """x**p with the principal branch, x^p := exp(p * Log x).

    Integer p falls back to repeated multiplication, which is exact for
    the backends involved and avoids the branch point at 0.
    """
    if float(p) == int(p):
        return x ** int(p)
    return c_exp(p * c_log(x))
