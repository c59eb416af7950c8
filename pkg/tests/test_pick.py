import math
import random

import numpy as np
import pytest

from monop.errors import DegenerateNodes, DomainError, NotInterpolable
from monop.halfplane import in_halfplane, moebius_lambda
from monop.pick import (diag_pick_matrix, np_interpolate, pick_matrix,
                        psd_check)


def test_pick_matrix_entries():
    M = pick_matrix([1, 2], 2).entries
    assert abs(M[0, 0] - 3) < 1e-15
    assert abs(M[0, 1] - 4 / 2) < 1e-15
    assert abs(M[1, 1] - 5 / 3) < 1e-15


def test_flat_shift_data_is_psd():
    for tau in (0, 0.5, 1, 2 + 3j):
        ps = [n + tau for n in range(30)]
        verdict = psd_check(pick_matrix(ps, 30).entries)
        assert verdict.is_psd, (tau, verdict.min_eigenvalue)


def test_negative_shift_rejected_with_witness():
    ps = [n - 0.3 for n in range(2)]
    M = pick_matrix(ps, 2).entries
    # explicit matrix from the defining formula: [[0.4, 0.7], [0.7, 0.8]]
    assert np.allclose(M, [[0.4, 0.7], [0.7, 0.8]])
    verdict = psd_check(M)
    assert verdict.status == "notpsd"
    assert verdict.witness is not None
    v = verdict.witness
    quad = (v.conjugate() @ M @ v).real
    assert quad < 0
    # the canonical witness (1, -1) gives v* M v = -0.2
    w = np.array([1.0, -1.0])
    assert abs(w @ M @ w - (-0.2)) < 1e-12


def test_powers_must_lie_in_halfplane():
    with pytest.raises(DomainError):
        pick_matrix([-1.0], 1)


def test_psd_check_rejects_non_hermitian():
    with pytest.raises(ValueError):
        psd_check(np.array([[1, 2], [3, 1]], dtype=complex))


def test_boundary_flag():
    # rank-one PSD matrix has eigenvalue 0: boundary case
    v = np.array([1.0, 2.0, -1.0])
    verdict = psd_check(np.outer(v, v))
    assert verdict.is_psd and verdict.boundary


def test_diag_pick_matrix():
    M = diag_pick_matrix([1, 0.5], 2)
    assert abs(M[0, 0]) < 1e-15             # 1 - 1 = 0
    assert abs(M[1, 1] - 0.75 / 3) < 1e-15


def test_psd_check_random_gram_matrices():
    rng = np.random.default_rng(7)
    for n in (3, 8, 20):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        G = A @ A.conjugate().T
        assert psd_check(G).is_psd
        # rank-deficient version still PSD
        G2 = G - np.linalg.eigvalsh(G)[0] * np.eye(n)
        assert psd_check(G2).is_psd


# ----------------------------------------------------- NP interpolation

def test_interpolant_hits_nodes_and_stays_inside():
    nodes = [0, 1, 2, 3]
    targets = [0.5, 1.7 + 0.1j, 2.4, 3.9]
    # feasibility first
    P = np.array([[(targets[m] + np.conj(targets[n]) + 1)
                   / (nodes[m] + np.conj(nodes[n]) + 1)
                   for n in range(4)] for m in range(4)])
    if psd_check(P).is_psd:
        beta = np_interpolate(nodes, targets)
        for z, w in zip(nodes, targets):
            assert abs(beta(z) - w) < 1e-8
        rng = random.Random(3)
        for _ in range(200):
            s = complex(10 ** rng.uniform(-2, 2) - 0.5 + 1e-3,
                        rng.uniform(-30, 30))
            assert abs(moebius_lambda(beta(s))) < 1


def test_flat_data_interpolates():
    nodes = list(range(4))
    targets = [n + 1 for n in nodes]
    beta = np_interpolate(nodes, targets)
    assert max(abs(beta(z) - w) for z, w in zip(nodes, targets)) < 1e-8


def test_identity_data_degenerates_to_identity():
    # targets equal to nodes force a unimodular Schur parameter: the
    # interpolant must still reproduce beta(s) = s
    beta = np_interpolate([0, 1, 2], [0, 1, 2])
    assert beta.constant_from is None or beta.constant_from >= 0
    for s in (0j, 0.5 + 1j, 3 - 2j):
        assert abs(beta(s) - s) < 1e-8 * (1 + abs(s))


def test_infeasible_data_raises_with_verdict():
    with pytest.raises(NotInterpolable) as exc:
        np_interpolate([0, 1], [-0.3, 0.7])
    assert exc.value.verdict is not None
    assert exc.value.verdict.status == "notpsd"


def test_coincident_nodes_rejected():
    with pytest.raises(DegenerateNodes):
        np_interpolate([1, 1], [1, 2])


def test_single_node():
    beta = np_interpolate([0], [2 + 1j])
    assert abs(beta(0j) - (2 + 1j)) < 1e-10
    assert in_halfplane(beta(5 + 3j))
