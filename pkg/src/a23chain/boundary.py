"""Boundary reflection matrices and their fusion behavior.

The left reflection matrix K^-(u) is non-diagonal (its corner entries
break U(1) symmetry); the right one K^+(u) follows from K^- by the
crossing map u -> -u + 4 eta + i pi together with M and the swap of the
boundary parameters.  Fusing a pair of reflection matrices with the
rank-6 projectors produces a constant 6x6 reflection matrix for the
fused auxiliary space, and the rank-4 re-projection brings it back to
the fundamental K, closing the hierarchy.
"""

from __future__ import annotations

import numpy as np

from . import fusion, rmatrix
from .operators import LabeledOperator, permutation_16, rel_residual
from .params import ModelParams
from .reporting import VerificationReport

IPI = 1j * np.pi


# ---------------------------------------------------------------------------
# builders


def build_k_minus(u, params: ModelParams) -> LabeledOperator:
    """Left reflection matrix on C^4."""
    eta, eps = params.eta, params.epsilon
    sh = np.sinh
    k = np.zeros((4, 4), dtype=complex)
    k[0, 0] = np.exp(-u)
    k[0, 3] = np.exp(eps) * sh(u)
    k[1, 1] = -sh(u - eta) / sh(eta)
    k[2, 2] = -sh(u - eta) / sh(eta)
    k[3, 0] = np.exp(-eps) * sh(u) / sh(eta) ** 2
    k[3, 3] = np.exp(u)
    return LabeledOperator((4,), k)


def build_k_plus(u, params: ModelParams) -> LabeledOperator:
    """Right reflection matrix: M K^-(-u + 4 eta + i pi) with the other
    boundary parameter."""
    swapped = ModelParams(eta=params.eta, epsilon=params.epsilon_prime,
                          epsilon_prime=params.epsilon, thetas=params.thetas)
    m = rmatrix.build_m(params.eta).mat
    return LabeledOperator((4,), m @ build_k_minus(-u + 4 * params.eta + IPI,
                                                   swapped).mat)


def build_fused_k_minus(params: ModelParams) -> LabeledOperator:
    """Fused 6x6 left reflection matrix; constant in u."""
    eta, eps = params.eta, params.epsilon
    sh = np.sinh
    k = np.zeros((6, 6), dtype=complex)
    k[0, 4] = np.exp(eps)
    k[1, 5] = np.exp(eps)
    k[2, 2] = -1 / sh(eta)
    k[3, 3] = 1 / sh(eta)
    k[4, 0] = np.exp(-eps) / sh(eta) ** 2
    k[5, 1] = np.exp(-eps) / sh(eta) ** 2
    return LabeledOperator((6,), k)


def build_fused_k_plus(params: ModelParams) -> LabeledOperator:
    """Fused 6x6 right reflection matrix; also constant in u."""
    swapped = ModelParams(eta=params.eta, epsilon=params.epsilon_prime,
                          epsilon_prime=params.epsilon, thetas=params.thetas)
    mb = fusion.build_m_bar(params.eta).mat
    return LabeledOperator((6,), mb @ build_fused_k_minus(swapped).mat)


# ---------------------------------------------------------------------------
# checks


def check_reflection_equation(params: ModelParams, samples: int = 50,
                              seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    """Boundary Yang-Baxter equation for K^-."""
    rep = VerificationReport("reflection-equation", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    p = permutation_16()
    for _ in range(samples):
        u, v = rmatrix._sample_points(rng, 2)
        r = lambda x: rmatrix.build_r(x, eta).mat
        r21 = lambda x: p @ r(x) @ p
        k1 = lambda x: np.kron(build_k_minus(x, params).mat, np.eye(4))
        k2 = lambda x: np.kron(np.eye(4), build_k_minus(x, params).mat)
        lhs = r(u - v) @ k1(u) @ r21(u + v) @ k2(v)
        rhs = k2(v) @ r(u + v) @ k1(u) @ r21(u - v)
        rep.record(rel_residual(lhs, rhs))
    return rep


def check_dual_reflection_equation(params: ModelParams, samples: int = 50,
                                   seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    """Boundary Yang-Baxter equation for K^+ with the crossing matrix."""
    rep = VerificationReport("dual-reflection-equation", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    p = permutation_16()
    m1 = np.kron(rmatrix.build_m(eta).mat, np.eye(4))
    m1i = np.linalg.inv(m1)
    for _ in range(samples):
        u, v = rmatrix._sample_points(rng, 2)
        r = lambda x: rmatrix.build_r(x, eta).mat
        r21 = lambda x: p @ r(x) @ p
        k1 = lambda x: np.kron(build_k_plus(x, params).mat, np.eye(4))
        k2 = lambda x: np.kron(np.eye(4), build_k_plus(x, params).mat)
        lhs = r(-u + v) @ k1(u) @ m1i @ r21(-u - v + 8 * eta + 2 * IPI) @ m1 @ k2(v)
        rhs = k2(v) @ m1 @ r(-u - v + 8 * eta + 2 * IPI) @ m1i @ k1(u) @ r21(-u + v)
        rep.record(rel_residual(lhs, rhs))
    return rep


def check_fused_reflection_equations(params: ModelParams, samples: int = 30,
                                     seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    """Reflection equation and its dual with the 6-dim auxiliary space."""
    rep = VerificationReport("fused-reflection-equations", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    rb = lambda x: fusion.build_fused_r(x, eta).mat
    rb21 = lambda x: fusion.build_fused_r21(x, eta).mat
    kb1 = np.kron(build_fused_k_minus(params).mat, np.eye(4))
    kbp1 = np.kron(build_fused_k_plus(params).mat, np.eye(4))
    mb1 = np.kron(fusion.build_m_bar(eta).mat, np.eye(4))
    mb1i = np.linalg.inv(mb1)
    for _ in range(samples):
        u, v = rmatrix._sample_points(rng, 2)
        k2 = np.kron(np.eye(6), build_k_minus(v, params).mat)
        lhs = rb(u - v) @ kb1 @ rb21(u + v) @ k2
        rhs = k2 @ rb(u + v) @ kb1 @ rb21(u - v)
        rep.record(rel_residual(lhs, rhs))
        kp2 = np.kron(np.eye(6), build_k_plus(v, params).mat)
        lhs = (rb(-u + v) @ kbp1 @ mb1i
               @ rb21(-u - v + 8 * eta + 2 * IPI) @ mb1 @ kp2)
        rhs = (kp2 @ mb1 @ rb(-u - v + 8 * eta + 2 * IPI)
               @ mb1i @ kbp1 @ rb21(-u + v))
        rep.record(rel_residual(lhs, rhs))
    return rep


def check_rank1_k_fusion(params: ModelParams, samples: int = 30, seed: int = 0,
                         tol: float = 1e-10) -> VerificationReport:
    """Rank-1 compression of a K^- (K^+) pair collapses to the stated
    scalar."""
    rep = VerificationReport("rank1-k-fusion", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    sh = np.sinh
    p = permutation_16()
    psi = fusion.psi0(eta)
    psi_s = p @ psi
    m1 = np.kron(rmatrix.build_m(eta).mat, np.eye(4))
    m1i = np.linalg.inv(m1)
    for u in rmatrix._sample_points(rng, samples):
        k1 = np.kron(build_k_minus(u, params).mat, np.eye(4))
        k2 = np.kron(np.eye(4), build_k_minus(u + 4 * eta + IPI, params).mat)
        x = k1 @ (p @ rmatrix.build_r(2 * u + 4 * eta + IPI, eta).mat @ p) @ k2
        scalar = (sh(u + 4 * eta) * sh(2 * u + 2 * eta) * sh(u - eta)
                  / sh(eta) ** 2)
        val = psi_s.conj() @ x @ psi
        rep.record(abs(val - scalar) / max(abs(scalar), 1.0))
        kp2 = np.kron(np.eye(4), build_k_plus(u + 4 * eta + IPI, params).mat)
        kp1 = np.kron(build_k_plus(u, params).mat, np.eye(4))
        xp = kp2 @ m1 @ rmatrix.build_r(-2 * u + 4 * eta + IPI, eta).mat @ m1i @ kp1
        scalar_p = (-sh(u - 4 * eta) * sh(2 * u - 2 * eta) * sh(u + eta)
                    / sh(eta) ** 2)
        val = psi.conj() @ xp @ psi_s
        rep.record(abs(val - scalar_p) / max(abs(scalar_p), 1.0))
    return rep


def check_rank6_k_fusion(params: ModelParams, samples: int = 30, seed: int = 0,
                         tol: float = 1e-10) -> VerificationReport:
    """Rank-6 compression of a K pair reproduces the fused 6x6 K matrix.

    The compressed left matrix equals minus the fused K^- times the
    scalar, and likewise for the dual; the two signs cancel in the fused
    transfer matrix.
    """
    rep = VerificationReport("rank6-k-fusion", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    sh, ch = np.sinh, np.cosh
    p = permutation_16()
    f12 = fusion.frame_rank6(eta)
    f21 = fusion.frame_rank6(eta, swapped=True)
    m1 = np.kron(rmatrix.build_m(eta).mat, np.eye(4))
    m1i = np.linalg.inv(m1)
    kb = build_fused_k_minus(params).mat
    kbp = build_fused_k_plus(params).mat
    for u in rmatrix._sample_points(rng, samples):
        k2 = np.kron(np.eye(4), build_k_minus(u, params).mat)
        k1 = np.kron(build_k_minus(u + 2 * eta, params).mat, np.eye(4))
        x = k2 @ rmatrix.build_r(2 * u + 2 * eta, eta).mat @ k1
        scalar = (2 / sh(eta) * ch(u - eta) * sh(u - eta) * sh(u + eta)
                  * sh(u + 2 * eta))
        rep.record(rel_residual(f12.conj().T @ x @ f21, -scalar * kb))
        kp1 = np.kron(build_k_plus(u + 2 * eta, params).mat, np.eye(4))
        kp2 = np.kron(np.eye(4), build_k_plus(u, params).mat)
        xp = kp1 @ m1i @ (p @ rmatrix.build_r(-2 * u + 6 * eta, eta).mat @ p) @ m1 @ kp2
        scalar_p = (-2 / sh(eta) * ch(u - eta) * sh(u - eta) * sh(u - 3 * eta)
                    * sh(u - 4 * eta))
        rep.record(rel_residual(f21.conj().T @ xp @ f12, -scalar_p * kbp))
    return rep


def check_rank4_k_fusion(params: ModelParams, samples: int = 30, seed: int = 0,
                         tol: float = 1e-10) -> VerificationReport:
    """Rank-4 compression of a fused/fundamental K pair reproduces the
    fundamental K up to the diagonal similarity."""
    rep = VerificationReport("rank4-k-fusion", tolerance=tol)
    rng = np.random.default_rng(seed)
    eta = params.eta
    sh, ch = np.sinh, np.cosh
    f4 = fusion.frame_rank4(eta)
    f4s = fusion.frame_rank4(eta, swapped=True)
    s = fusion.build_s_bar(eta).mat
    si = np.linalg.inv(s)
    mb1 = np.kron(fusion.build_m_bar(eta).mat, np.eye(4))
    mb1i = np.linalg.inv(mb1)
    kb = np.kron(build_fused_k_minus(params).mat, np.eye(4))
    kbp = np.kron(build_fused_k_plus(params).mat, np.eye(4))
    for u in rmatrix._sample_points(rng, samples):
        k2 = np.kron(np.eye(6), build_k_minus(u, params).mat)
        x = k2 @ fusion.build_fused_r(2 * u + 3 * eta, eta).mat @ kb
        scalar = 4 / sh(eta) * ch(u) * sh(u - eta)
        target = scalar * (s @ build_k_minus(u + 2 * eta + IPI, params).mat @ si)
        rep.record(rel_residual(f4.conj().T @ x @ f4s, target))
        kp2 = np.kron(np.eye(6), build_k_plus(u, params).mat)
        xp = kbp @ mb1i @ fusion.build_fused_r21(-2 * u + 5 * eta, eta).mat @ mb1 @ kp2
        scalar_p = -4 / sh(eta) * ch(u - eta) * sh(u - 4 * eta)
        target_p = scalar_p * (s @ build_k_plus(u + 2 * eta + IPI, params).mat @ si)
        rep.record(rel_residual(f4s.conj().T @ xp @ f4, target_p))
    return rep
