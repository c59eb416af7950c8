"""Feasibility of power sequences and constructive Nevanlinna-Pick
interpolation.

A bounded operator sending x^n to a multiple of x^{p_n} exists (for some
not-all-zero coefficients) exactly when the Hermitian matrix
[(p_m + conj(p_n) + 1) / (m + n + 1)] is positive semidefinite; the
constructive direction runs the Schur recursion on the disk side and
returns an actual holomorphic self-map of the half-plane.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._numeric import conj
from .errors import DegenerateNodes, EigenFailure, NotInterpolable
from .halfplane import moebius_lambda, require_halfplane

MAX_SIZE = 500
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class PickMatrix:
    n: int
    entries: np.ndarray


@dataclass(frozen=True)
class PsdVerdict:
    status: str                      # "psd" | "notpsd"
    min_eigenvalue: float
    witness: Optional[np.ndarray]    # present iff notpsd
    boundary: bool = False           # min eigenvalue within tolerance of 0

    @property
    def is_psd(self) -> bool:
        return self.status == "psd"


def pick_matrix(p: Sequence[complex], size: int) -> PickMatrix:
    """M[m][n] = (p_m + conj(p_n) + 1) / (m + n + 1)."""
    if size < 1 or size > MAX_SIZE:
        raise ValueError(f"size {size} not in 1..{MAX_SIZE}")
    if len(p) < size:
        raise ValueError(f"need {size} targets, got {len(p)}")
    ps = [require_halfplane(v, "power") for v in p[:size]]
    M = np.empty((size, size), dtype=complex)
    for m in range(size):
        for n in range(size):
            M[m, n] = (ps[m] + ps[n].conjugate() + 1) / (m + n + 1)
    return PickMatrix(size, M)


def diag_pick_matrix(c: Sequence[complex], size: int) -> np.ndarray:
    """Diagonal (tau = 0) criterion matrix [(1 - c_m conj(c_n)) / (1+m+n)]."""
    cs = [complex(v) for v in c[:size]]
    if len(cs) < size:
        raise ValueError(f"need {size} coefficients, got {len(c)}")
    M = np.empty((size, size), dtype=complex)
    for m in range(size):
        for n in range(size):
            M[m, n] = (1 - cs[m] * cs[n].conjugate()) / (1 + m + n)
    return M


def _pivoted_cholesky_psd(M: np.ndarray, tol: float) -> bool:
    """Fast accept path: full-pivot Cholesky with compensated pivot
    accumulation; True only when the factorization completes with every
    pivot above -tol."""
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    scale = tol
    for _ in range(n):
        d = np.real(np.diag(A))
        j = int(np.argmax(d))
        piv = math.fsum([d[j]])
        if piv < -scale:
            return False
        if piv <= scale:
            # remaining block must vanish for PSD; defer to the eigensolver
            return bool(np.max(np.abs(A)) <= scale)
        order = list(range(A.shape[0]))
        order[0], order[j] = order[j], order[0]
        A = A[np.ix_(order, order)]
        col = A[1:, 0] / piv
        A = A[1:, 1:] - np.outer(col, col.conjugate()) * piv
        if A.size == 0:
            return True
    return True


def psd_check(M: np.ndarray, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """PSD test with tolerance relative to 1 + trace; returns a witness
    vector v with v* M v < 0 when the matrix is not PSD."""
    M = np.asarray(M, dtype=complex)
    if M.shape[0] != M.shape[1]:
        raise ValueError("matrix not square")
    if np.max(np.abs(M - M.conjugate().T)) > 1e-12 * (1 + np.max(np.abs(M))):
        raise ValueError("matrix not Hermitian")
    scale = tol * (1 + abs(np.trace(M).real))
    H = 0.5 * (M + M.conjugate().T)
    if _pivoted_cholesky_psd(H, scale):
        # cheap accept; still report the extreme eigenvalue
        try:
            w = np.linalg.eigvalsh(H)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        lam = float(w[0])
        return PsdVerdict("psd", lam, None, boundary=abs(lam) <= scale)
    try:
        w, v = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    lam = float(w[0])
    if lam >= -scale:
        return PsdVerdict("psd", lam, None, boundary=abs(lam) <= scale)
    return PsdVerdict("notpsd", lam, v[:, 0])


# ----------------------------------------------------- NP interpolation

@dataclass(frozen=True)
class SchurInterpolant:
    """Schur-class function on the disk built by the Schur recursion.

    ``params[j]`` is the Moebius parameter consumed at disk node
    ``nodes[j]``; if ``constant_from`` is set, the function is the
    unimodular constant ``params[constant_from]`` from that level on.
    Transferred back to the half-plane by beta = lambda^{-1} o phi o lambda.
    """

    nodes: tuple
    params: tuple
    constant_from: Optional[int] = None

    def disk_eval(self, z):
        if self.constant_from is not None:
            phi = self.params[self.constant_from] + 0 * z
            levels = range(self.constant_from)
        else:
            phi = 0 * z
            levels = range(len(self.params))
        for j in reversed(levels):
            g = self.params[j]
            zj = self.nodes[j]
            b = (z - zj) / (1 - conj(zj) * z)
            phi = (g + b * phi) / (1 + conj(g) * b * phi)
        return phi

    def __call__(self, s):
        """Evaluate as a self-map of the half-plane."""
        z = moebius_lambda(s)
        w = self.disk_eval(z)
        return w / (1 - w)


def np_interpolate(nodes: Sequence[complex], targets: Sequence[complex],
                   tol: float = DEFAULT_TOL) -> SchurInterpolant:
    """Construct beta: H -> H with beta(nodes[j]) = targets[j].

    Runs the Schur recursion on the disk after transfer by lambda.
    Raises NotInterpolable (carrying the PSD verdict of the half-plane
    Pick matrix) when the data is infeasible, DegenerateNodes on
    coincident nodes.
    """
    zs = [require_halfplane(z, "node") for z in nodes]
    ws = [require_halfplane(w, "target") for w in targets]
    if len(zs) != len(ws) or not zs:
        raise ValueError("nodes and targets must be nonempty, same length")
    k = len(zs)
    for a in range(k):
        for b in range(a + 1, k):
            if abs(zs[a] - zs[b]) < 1e-12:
                raise DegenerateNodes(f"nodes {a} and {b} coincide")

    P = np.empty((k, k), dtype=complex)
    for m in range(k):
        for n in range(k):
            P[m, n] = (ws[m] + ws[n].conjugate() + 1) / (zs[m] + zs[n].conjugate() + 1)
    verdict = psd_check(P, tol)
    if not verdict.is_psd:
        raise NotInterpolable("Pick matrix is not PSD", verdict=verdict)

    dz = [moebius_lambda(z) for z in zs]
    dw = [moebius_lambda(w) for w in ws]
    params = []
    cur_nodes = list(dz)
    cur_targets = list(dw)
    constant_from = None
    for j in range(k):
        g = cur_targets[0]
        if abs(g) > 1 + 1e-10:
            raise NotInterpolable(
                f"Schur step {j} left the closed disk (|target| = {abs(g)})",
                verdict=verdict)
        params.append(g)
        if abs(g) >= 1 - 1e-10:
            # unimodular parameter: the interpolant is constant from here,
            # remaining data must agree with it
            for r in range(1, len(cur_targets)):
                if abs(cur_targets[r] - g) > 1e-8:
                    raise NotInterpolable(
                        "degenerate data is inconsistent with the forced "
                        f"constant at Schur step {j}", verdict=verdict)
            constant_from = j
            break
        new_nodes = cur_nodes[1:]
        new_targets = []
        z0 = cur_nodes[0]
        for z, w in zip(cur_nodes[1:], cur_targets[1:]):
            v = (w - g) / (1 - conj(g) * w)
            b = (z - z0) / (1 - conj(z0) * z)
            new_targets.append(v / b)
        cur_nodes, cur_targets = new_nodes, new_targets
        if not cur_nodes:
            break
    used = constant_from + 1 if constant_from is not None else len(params)
    return SchurInterpolant(tuple(dz[:used]), tuple(params),
                            constant_from=constant_from)
