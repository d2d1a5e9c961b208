"""Scalar weight functions and the fundamental 16x16 R-matrix.

The R-matrix acts on C^4 x C^4 with basis |1>..|4> per factor and obeys
unitarity, crossing unitarity, regularity and the Yang-Baxter equation;
the checks here verify all of them at randomly sampled complex spectral
parameters.
"""

from __future__ import annotations

import numpy as np

from .operators import LabeledOperator, embed, permutation_16, rel_residual
from .reporting import VerificationReport

IPI = 1j * np.pi


# ---------------------------------------------------------------------------
# scalar weights


def w_a(u, eta):
    return 2 * np.sinh(u / 2 - eta) * np.cosh(u / 2 - 2 * eta)


def w_b(u, eta):
    return 2 * np.sinh(u / 2) * np.cosh(u / 2 - 2 * eta)


def w_e(u, eta):
    return -2 * np.exp(-u / 2) * np.sinh(eta) * np.cosh(u / 2 - 2 * eta)


def w_ebar(u, eta):
    return np.exp(u) * w_e(u, eta)


def w_c(u, eta):
    return 2 * np.sinh(u / 2) * np.cosh(u / 2 - eta)


def w_a1(u, eta):
    return 2 * np.sinh(u - 3 * eta)


def w_b1(u, eta):
    return 2 * np.sinh(u - eta)


def w_c1(u, eta):
    return 4 * np.sinh((u - 3 * eta) / 2) * np.cosh((u - eta) / 2)


def rho1(u, eta):
    return w_a(u, eta) * w_a(-u, eta)


def rho2(u, eta):
    return w_a1(u, eta) * w_a1(-u, eta)


def rho_tilde0(u, eta):
    return np.sinh(u / 2 + eta) * np.cosh(u / 2 - 2 * eta)


def rho_tilde1(u, eta):
    return -4 * np.sinh(u / 2 + eta) * np.cosh(u / 2 - 2 * eta)


_BAR = {1: 1.5, 2: 2.5, 3: 2.5, 4: 3.5}


def w_a_alpha_beta(u, eta, alpha: int, beta: int):
    """Off-diagonal-block weight for the (alpha,beta) entry family."""
    if alpha == beta:
        return 2 * np.sinh(u / 2) * np.cosh(u / 2 - eta)
    sign = 1.0 if alpha < beta else -1.0
    delta = 1.0 if alpha == 5 - beta else 0.0
    expo = (sign * 2 + _BAR[alpha] - _BAR[beta]) * eta
    return (2 * np.sinh(eta) * np.exp(-sign * u / 2)
            * (-sign * np.exp(expo) * np.sinh(u / 2)
               - delta * np.cosh(u / 2 - 2 * eta)))


# ---------------------------------------------------------------------------
# matrix builders


def _unit(alpha: int, beta: int) -> np.ndarray:
    m = np.zeros((4, 4))
    m[alpha - 1, beta - 1] = 1.0
    return m


def build_r(u, eta) -> LabeledOperator:
    """Fundamental R-matrix on C^4 x C^4."""
    r = np.zeros((16, 16), dtype=complex)
    for alpha in range(1, 5):
        r += w_a(u, eta) * np.kron(_unit(alpha, alpha), _unit(alpha, alpha))
        for beta in range(1, 5):
            if beta != alpha and alpha != 5 - beta:
                r += w_b(u, eta) * np.kron(_unit(alpha, alpha), _unit(beta, beta))
                weight = w_e(u, eta) if alpha < beta else w_ebar(u, eta)
                r += weight * np.kron(_unit(alpha, beta), _unit(beta, alpha))
            r_ab = w_a_alpha_beta(u, eta, alpha, beta) if beta != alpha else 0.0
            if beta != alpha:
                r += r_ab * np.kron(_unit(alpha, beta), _unit(5 - alpha, 5 - beta))
        r += (w_a_alpha_beta(u, eta, alpha, alpha)
              * np.kron(_unit(alpha, alpha), _unit(5 - alpha, 5 - alpha)))
    return LabeledOperator((4, 4), r)


def build_r21(u, eta) -> LabeledOperator:
    """R with the two factors swapped: P R P."""
    p = permutation_16()
    return LabeledOperator((4, 4), p @ build_r(u, eta).mat @ p)


def build_m(eta) -> LabeledOperator:
    """Crossing matrix diag(e^{2 eta}, 1, 1, e^{-2 eta})."""
    diag = np.array([np.exp(2 * eta), 1.0, 1.0, np.exp(-2 * eta)], dtype=complex)
    return LabeledOperator((4,), np.diag(diag))


# ---------------------------------------------------------------------------
# structural checks


def _sample_points(rng: np.random.Generator, n: int, scale: float = 3.0):
    re = rng.uniform(-scale, scale, size=n)
    im = rng.uniform(-scale, scale, size=n)
    return re + 1j * im


def check_regularity(eta, tol: float = 1e-12) -> VerificationReport:
    """R(0) equals a(0) times the permutation operator."""
    rep = VerificationReport("regularity", tolerance=tol)
    target = w_a(0.0, eta) * permutation_16()
    rep.record(np.max(np.abs(build_r(0.0, eta).mat - target)))
    return rep


def check_unitarity(eta, samples: int = 100, seed: int = 0,
                    tol: float = 1e-10) -> VerificationReport:
    """R12(u) R21(-u) = rho1(u) id."""
    rep = VerificationReport("unitarity", tolerance=tol)
    rng = np.random.default_rng(seed)
    for u in _sample_points(rng, samples):
        lhs = build_r(u, eta).mat @ build_r21(-u, eta).mat
        rep.record(rel_residual(lhs, rho1(u, eta) * np.eye(16)))
    return rep


def check_crossing_unitarity(eta, samples: int = 100, seed: int = 0,
                             tol: float = 1e-10) -> VerificationReport:
    """Both partial-transpose forms of crossing unitarity."""
    rep = VerificationReport("crossing-unitarity", tolerance=tol)
    rng = np.random.default_rng(seed)
    m = build_m(eta).mat
    m1 = np.kron(m, np.eye(4))
    m2 = np.kron(np.eye(4), m)
    for u in _sample_points(rng, samples):
        r = build_r(u, eta)
        rb = build_r21(-u + 8 * eta + 2 * IPI, eta)
        target = rho1(u - 4 * eta - IPI, eta) * np.eye(16)
        lhs1 = (r.transpose_factor(0).mat @ m1
                @ rb.transpose_factor(0).mat @ np.linalg.inv(m1))
        lhs2 = (r.transpose_factor(1).mat @ np.linalg.inv(m2)
                @ rb.transpose_factor(1).mat @ m2)
        rep.record(rel_residual(lhs1, target))
        rep.record(rel_residual(lhs2, target))
        rep.record(rel_residual(lhs1, lhs2))
    return rep


def check_ybe(eta, samples: int = 50, seed: int = 0, tol: float = 1e-10,
              r_builder_a=None, dims_a=(4,)) -> VerificationReport:
    """Yang-Baxter equation on V_a x V x V.

    With the default builder this is the fundamental YBE; passing the
    fused builder (dims_a=(6,)) checks the mixed equation.
    """
    if r_builder_a is None:
        r_builder_a = build_r
    da = dims_a[0]
    dims = (da, 4, 4)
    rep = VerificationReport("yang-baxter", tolerance=tol)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        u, v = _sample_points(rng, 2)
        r12 = embed(r_builder_a(u - v, eta).mat, (0, 1), dims)
        r13 = embed(r_builder_a(u, eta).mat, (0, 2), dims)
        r23 = embed(build_r(v, eta).mat, (1, 2), dims)
        lhs = r12 @ r13 @ r23
        rhs = r23 @ r13 @ r12
        rep.record(rel_residual(lhs, rhs))
    return rep
