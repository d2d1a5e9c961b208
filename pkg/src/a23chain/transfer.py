"""Monodromy matrices, open/periodic transfer matrices and Hamiltonian.

All operators are dense matrices on the chain Hilbert space (C^4)^N,
built by embedding R-matrices acting on an auxiliary slot (4- or 6-dim)
and tracing it out.  The checks verify the commuting families, the
operator product identities at the inhomogeneity points, the special
values tying the fundamental and fused transfer matrices together, and
the projector-generation property of monodromy products.
"""

from __future__ import annotations

import numpy as np

from . import boundary, fusion, rmatrix
from .operators import LabeledOperator, embed, partial_trace, permutation_16, rel_residual
from .params import ModelParams
from .reporting import VerificationReport

IPI = 1j * np.pi


# ---------------------------------------------------------------------------
# monodromy matrices


def _dims(params: ModelParams, aux_dim: int):
    return (aux_dim,) + (4,) * params.n_sites


def monodromy(u, params: ModelParams, fused: bool = False) -> LabeledOperator:
    """T(u): ordered product of R-matrices with the auxiliary slot first."""
    aux = 6 if fused else 4
    dims = _dims(params, aux)
    n = int(np.prod(dims))
    t = np.eye(n, dtype=complex)
    for j, theta in enumerate(params.thetas):
        if fused:
            r = fusion.build_fused_r(u - theta, params.eta).mat
        else:
            r = rmatrix.build_r(u - theta, params.eta).mat
        t = t @ embed(r, (0, j + 1), dims)
    return LabeledOperator(dims, t)


def hat_monodromy(u, params: ModelParams, fused: bool = False) -> LabeledOperator:
    """That(u): reversed product with the quantum space as first R factor."""
    aux = 6 if fused else 4
    dims = _dims(params, aux)
    n = int(np.prod(dims))
    t = np.eye(n, dtype=complex)
    for j in range(params.n_sites - 1, -1, -1):
        x = u + params.thetas[j]
        if fused:
            # quantum-first fused R is the transpose, stored 6-dim first
            r = fusion.build_fused_r21(x, params.eta).mat
            t = t @ embed(r, (0, j + 1), dims)
        else:
            t = t @ embed(rmatrix.build_r(x, params.eta).mat, (j + 1, 0), dims)
    return LabeledOperator(dims, t)


# ---------------------------------------------------------------------------
# transfer matrices


def transfer_open(u, params: ModelParams, fused: bool = False) -> LabeledOperator:
    """Double-row transfer matrix tr_0 { K+ T K- That } on (C^4)^N."""
    aux = 6 if fused else 4
    dims = _dims(params, aux)
    if fused:
        kp = boundary.build_fused_k_plus(params).mat
        km = boundary.build_fused_k_minus(params).mat
    else:
        kp = boundary.build_k_plus(u, params).mat
        km = boundary.build_k_minus(u, params).mat
    big = (embed(kp, (0,), dims) @ monodromy(u, params, fused).mat
           @ embed(km, (0,), dims) @ hat_monodromy(u, params, fused).mat)
    return LabeledOperator(dims[1:], partial_trace(big, dims, 0))


def transfer_periodic(u, params: ModelParams, fused: bool = False) -> LabeledOperator:
    """Single-row transfer matrix tr_0 T(u) on (C^4)^N."""
    aux = 6 if fused else 4
    dims = _dims(params, aux)
    return LabeledOperator(dims[1:], partial_trace(monodromy(u, params, fused).mat,
                                                   dims, 0))


# ---------------------------------------------------------------------------
# Hamiltonian


def _r_prime_at_zero(eta, h: float = 1e-3) -> np.ndarray:
    """Derivative of the fundamental R-matrix at u = 0 (Richardson)."""
    def d(step):
        return (rmatrix.build_r(step, eta).mat
                - rmatrix.build_r(-step, eta).mat) / (2 * step)
    return (4 * d(h) - d(2 * h)) / 3


def hamiltonian(params: ModelParams) -> LabeledOperator:
    """Open-chain Hamiltonian: bulk two-site terms plus boundary terms.

    Both monodromy factors of the double-row transfer matrix contribute
    one derivative each, hence the factor 2 on the two-site density
    2 R'(0) P / a(0).  Right boundary: K^-'(0) on the last site.  Left
    boundary: the same two-site density contracted against K^+(0) on
    the auxiliary slot.  The scalar tr K^+'(0) / tr K^+(0) is included
    so the result equals d/du log t(u) at u = 0 exactly.  Defined at
    zero inhomogeneities.
    """
    if any(abs(t) > 1e-14 for t in params.thetas):
        raise ValueError("local Hamiltonian requires zero inhomogeneities")
    eta = params.eta
    n = params.n_sites
    dims = (4,) * n
    dim = 4 ** n
    scale = 2.0 / rmatrix.w_a(0.0, eta)
    rp = _r_prime_at_zero(eta)
    p = permutation_16()
    h_two = scale * (rp @ p)
    ham = np.zeros((dim, dim), dtype=complex)
    for j in range(n - 1):
        ham += embed(h_two, (j, j + 1), dims)
    # right boundary: K^-(0) is the identity matrix
    ham += embed(_k_minus_prime_at_zero(params), (n - 1,), dims)
    # left boundary: tr_0 { K+_0(0) h_{01} } / tr K+(0), auxiliary slot first
    kp0 = boundary.build_k_plus(0.0, params).mat
    big = np.kron(kp0, np.eye(4)) @ h_two
    term = partial_trace(big, (4, 4), 0) / np.trace(kp0)
    ham += embed(term, (0,), dims)
    # additive scalar from the derivative of K+ under the trace
    ham += (np.trace(_k_plus_prime_at_zero(params)) / np.trace(kp0)) * np.eye(dim)
    return LabeledOperator(dims, ham)


def _k_minus_prime_at_zero(params: ModelParams, h: float = 1e-3) -> np.ndarray:
    def d(step):
        return (boundary.build_k_minus(step, params).mat
                - boundary.build_k_minus(-step, params).mat) / (2 * step)
    return (4 * d(h) - d(2 * h)) / 3


def _k_plus_prime_at_zero(params: ModelParams, h: float = 1e-3) -> np.ndarray:
    def d(step):
        return (boundary.build_k_plus(step, params).mat
                - boundary.build_k_plus(-step, params).mat) / (2 * step)
    return (4 * d(h) - d(2 * h)) / 3


def hamiltonian_from_transfer(params: ModelParams, h: float = 1e-4) -> LabeledOperator:
    """Logarithmic derivative of the open transfer matrix at u = 0,
    by Richardson-extrapolated central differences."""
    def d(step):
        tp = transfer_open(step, params).mat
        tm = transfer_open(-step, params).mat
        return (tp - tm) / (2 * step)
    tprime = (4 * d(h) - d(2 * h)) / 3
    t0 = transfer_open(0.0, params).mat
    return LabeledOperator((4,) * params.n_sites, tprime @ np.linalg.inv(t0))


# ---------------------------------------------------------------------------
# checks


def check_commuting_family(params: ModelParams, samples: int = 5, seed: int = 0,
                           tol: float = 1e-8) -> VerificationReport:
    """[t(u), t(v)] = [t(u), tbar(v)] = 0 and the periodic analogues."""
    rep = VerificationReport("commuting-family", tolerance=tol)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        u, v = rmatrix._sample_points(rng, 2, scale=1.5)
        a = transfer_open(u, params).mat
        b = transfer_open(v, params).mat
        c = transfer_open(v, params, fused=True).mat
        rep.record(rel_residual(a @ b, b @ a))
        rep.record(rel_residual(a @ c, c @ a))
        ap = transfer_periodic(u, params).mat
        bp = transfer_periodic(v, params).mat
        cp = transfer_periodic(v, params, fused=True).mat
        rep.record(rel_residual(ap @ bp, bp @ ap))
        rep.record(rel_residual(ap @ cp, cp @ ap))
    return rep


def check_special_values(params: ModelParams, tol: float = 1e-8) -> VerificationReport:
    """t(0), t(4 eta + i pi) proportional to the identity, and the value
    of t(2 eta) against the fused transfer matrix at eta."""
    rep = VerificationReport("transfer-special-values", tolerance=tol)
    eta = params.eta
    dim = params.hilbert_dim
    scalar = 4 * np.cosh(eta) ** 2 * np.prod(
        [rmatrix.rho1(-t, eta) for t in params.thetas])
    rep.record(rel_residual(transfer_open(0.0, params).mat,
                            scalar * np.eye(dim)))
    rep.record(rel_residual(transfer_open(4 * eta + IPI, params).mat,
                            scalar * np.eye(dim)))
    # t(2 eta) is proportional to tbar(eta); the constant follows from the
    # rank-6 product identity at u = 0
    factor = -np.sinh(2 * eta) ** 2 / 2 ** (2 * params.n_sites + 1)
    rep.record(rel_residual(transfer_open(2 * eta, params).mat,
                            factor * transfer_open(eta, params, fused=True).mat))
    return rep


def _id_prefactors(x, eta):
    """Scalar prefactors of the three operator product identity families
    evaluated at the point x."""
    sh, ch = np.sinh, np.cosh
    p1 = (sh(2 * x - 2 * eta) * sh(2 * x + 2 * eta) * sh(x - 4 * eta)
          * sh(x + 4 * eta)
          / (4 * sh(eta) ** 4 * ch(x - 2 * eta) * ch(x + 2 * eta)))
    p2 = (sh(2 * x - 2 * eta) ** 2 * sh(x + 2 * eta) * sh(x - 4 * eta)
          / (4 * sh(eta) ** 2 * ch(x) * ch(x - 2 * eta)))
    p3 = (2 * ch(x) * sh(2 * x - 2 * eta) * sh(x - 4 * eta)
          / (sh(eta) ** 2 * sh(2 * x + 2 * eta) * sh(2 * x - 4 * eta)))
    return p1, p2, p3


def check_operator_identities(params: ModelParams, tol: float = 1e-8) -> VerificationReport:
    """Product identities of t and tbar at the inhomogeneity points."""
    rep = VerificationReport("operator-identities", tolerance=tol)
    eta = params.eta
    dim = params.hilbert_dim
    for j, theta in enumerate(params.thetas):
        for x in (theta, -theta):
            p1, p2, p3 = _id_prefactors(x, eta)
            prod1 = np.prod([rmatrix.w_a(x - t, eta)
                             * rmatrix.w_c(x - t + 4 * eta + IPI, eta)
                             * rmatrix.w_a(x + t, eta)
                             * rmatrix.w_c(x + t + 4 * eta + IPI, eta)
                             for t in params.thetas])
            lhs = transfer_open(x, params).mat @ transfer_open(x + 4 * eta + IPI, params).mat
            rep.record(rel_residual(lhs, p1 * prod1 * np.eye(dim)))
            prod2 = np.prod([rmatrix.rho_tilde0(x - t, eta)
                             * rmatrix.rho_tilde0(x + t, eta)
                             for t in params.thetas])
            lhs = transfer_open(x, params).mat @ transfer_open(x + 2 * eta, params).mat
            rhs = p2 * prod2 * transfer_open(x + eta, params, fused=True).mat
            rep.record(rel_residual(lhs, rhs))
            prod3 = np.prod([rmatrix.rho_tilde1(x - t, eta)
                             * rmatrix.rho_tilde1(x + t, eta)
                             for t in params.thetas])
            lhs = (transfer_open(x, params).mat
                   @ transfer_open(x + 3 * eta, params, fused=True).mat)
            rhs = p3 * prod3 * transfer_open(x + 2 * eta + IPI, params).mat
            rep.record(rel_residual(lhs, rhs))
    return rep


def check_periodic_identities(params: ModelParams, tol: float = 1e-8) -> VerificationReport:
    """Product identities of the periodic transfer matrices."""
    rep = VerificationReport("periodic-operator-identities", tolerance=tol)
    eta = params.eta
    dim = params.hilbert_dim
    for theta in params.thetas:
        prod1 = np.prod([rmatrix.w_a(theta - t, eta)
                         * rmatrix.w_c(theta - t + 4 * eta + IPI, eta)
                         for t in params.thetas])
        lhs = (transfer_periodic(theta, params).mat
               @ transfer_periodic(theta + 4 * eta + IPI, params).mat)
        rep.record(rel_residual(lhs, prod1 * np.eye(dim)))
        prod2 = np.prod([rmatrix.rho_tilde0(theta - t, eta) for t in params.thetas])
        lhs = (transfer_periodic(theta, params).mat
               @ transfer_periodic(theta + 2 * eta, params).mat)
        rhs = prod2 * transfer_periodic(theta + eta, params, fused=True).mat
        rep.record(rel_residual(lhs, rhs))
        prod3 = np.prod([rmatrix.rho_tilde1(theta - t, eta) for t in params.thetas])
        lhs = (transfer_periodic(theta, params).mat
               @ transfer_periodic(theta + 3 * eta, params, fused=True).mat)
        rhs = prod3 * transfer_periodic(theta + 2 * eta + IPI, params).mat
        rep.record(rel_residual(lhs, rhs))
    return rep


def check_projector_generation(params: ModelParams, tol: float = 1e-8) -> VerificationReport:
    """Monodromy products at the inhomogeneity points are annihilated by
    the complementary projectors."""
    rep = VerificationReport("projector-generation", tolerance=tol)
    eta = params.eta
    n = params.n_sites
    dims2 = (4, 4) + (4,) * n
    dims2f = (6, 4) + (4,) * n

    def mono(u, slot, fused=False):
        dims = dims2f if fused else dims2
        total = int(np.prod(dims))
        t = np.eye(total, dtype=complex)
        for j, theta in enumerate(params.thetas):
            if fused:
                r = fusion.build_fused_r(u - theta, eta).mat
                t = t @ embed(r, (slot, j + 2), dims)
            else:
                r = rmatrix.build_r(u - theta, eta).mat
                t = t @ embed(r, (slot, j + 2), dims)
        return t

    for theta in params.thetas:
        # rank-1: T_1(theta) T_2(theta + 4 eta + i pi) fixed by P21
        x = mono(theta, 0) @ mono(theta + 4 * eta + IPI, 1)
        p21 = embed(fusion.projector_rank1(eta, swapped=True).mat, (0, 1), dims2)
        rep.record(rel_residual(p21 @ x, x))
        # rank-6: T_2(theta) T_1(theta + 2 eta) fixed by P6_12
        x = mono(theta, 1) @ mono(theta + 2 * eta, 0)
        p6 = embed(fusion.projector_rank6(eta).mat, (0, 1), dims2)
        rep.record(rel_residual(p6 @ x, x))
        # rank-4: T_2(theta) Tbar(theta + 3 eta) fixed by P4
        dims = dims2f
        t2 = np.eye(int(np.prod(dims)), dtype=complex)
        for j, th in enumerate(params.thetas):
            t2 = t2 @ embed(rmatrix.build_r(theta - th, eta).mat, (1, j + 2), dims)
        tb = np.eye(int(np.prod(dims)), dtype=complex)
        for j, th in enumerate(params.thetas):
            tb = tb @ embed(fusion.build_fused_r(theta + 3 * eta - th, eta).mat,
                            (0, j + 2), dims)
        x = t2 @ tb
        p4 = embed(fusion.projector_rank4(eta).mat, (0, 1), dims)
        rep.record(rel_residual(p4 @ x, x))
    return rep


def check_monodromy_fusion(params: ModelParams, samples: int = 3, seed: int = 0,
                           tol: float = 1e-8) -> VerificationReport:
    """Projected monodromy products collapse to scalars (rank 1), to the
    six-dimensional fused monodromy (rank 6), or to a similarity
    transform of the fundamental monodromy (rank 4), for both the
    direct and the reflecting products."""
    rep = VerificationReport("monodromy-fusion", tolerance=tol)
    eta = params.eta
    n = params.n_sites
    thetas = params.thetas
    rng = np.random.default_rng(seed)

    def mono(u, slot, dims, fused=False, hat=False):
        q0 = len(dims) - n  # first quantum slot
        t = np.eye(int(np.prod(dims)), dtype=complex)
        if not hat:
            for j, th in enumerate(thetas):
                r = (fusion.build_fused_r(u - th, eta).mat if fused
                     else rmatrix.build_r(u - th, eta).mat)
                t = t @ embed(r, (slot, q0 + j), dims)
        else:
            for j in range(n - 1, -1, -1):
                x = u + thetas[j]
                if fused:
                    t = t @ embed(fusion.build_fused_r21(x, eta).mat,
                                  (slot, q0 + j), dims)
                else:
                    t = t @ embed(rmatrix.build_r(x, eta).mat,
                                  (q0 + j, slot), dims)
        return t

    dims2 = (4, 4) + (4,) * n
    dims2f = (6, 4) + (4,) * n
    s = fusion.build_s_bar(eta).mat
    sb = np.kron(s, np.eye(4 ** n))
    sbi = np.kron(np.linalg.inv(s), np.eye(4 ** n))
    for u in rmatrix._sample_points(rng, samples, scale=0.6):
        for hat in (False, True):
            sign = -1 if hat else 1

            def site_prod(fn, shift=0.0):
                return np.prod([fn(u - sign * th + shift, eta)
                                for th in thetas])

            # rank 1: the product collapses to a scalar on the singlet
            p1 = embed(fusion.projector_rank1(eta, swapped=not hat).mat,
                       (0, 1), dims2)
            x = (mono(u, 0, dims2, hat=hat)
                 @ mono(u + 4 * eta + IPI, 1, dims2, hat=hat))
            sc = (site_prod(rmatrix.w_a)
                  * site_prod(rmatrix.w_c, 4 * eta + IPI))
            rep.record(rel_residual(p1 @ x @ p1, sc * p1))
            # rank 6: the compressed product is the fused monodromy
            p6 = embed(fusion.projector_rank6(eta, swapped=hat).mat,
                       (0, 1), dims2)
            x = (mono(u, 1, dims2, hat=hat)
                 @ mono(u + 2 * eta, 0, dims2, hat=hat))
            f6 = np.kron(fusion.frame_rank6(eta, swapped=hat), np.eye(4 ** n))
            tf = mono(u + eta, 0, (6,) + (4,) * n, fused=True, hat=hat)
            rhs = site_prod(rmatrix.rho_tilde0) * (f6 @ tf @ f6.conj().T)
            rep.record(rel_residual(p6 @ x @ p6, rhs))
            # rank 4: back to the fundamental monodromy up to similarity
            g = np.kron(fusion.frame_rank4(eta, swapped=hat), np.eye(4 ** n))
            x = (mono(u, 1, dims2f, hat=hat)
                 @ mono(u + 3 * eta, 0, dims2f, fused=True, hat=hat))
            tf = mono(u + 2 * eta + IPI, 0, (4,) + (4,) * n, hat=hat)
            rhs = site_prod(rmatrix.rho_tilde1) * (sb @ tf @ sbi)
            rep.record(rel_residual(g.conj().T @ x @ g, rhs))
    return rep


def check_hamiltonian(params: ModelParams, tol: float = 1e-7) -> VerificationReport:
    """Local Hamiltonian agrees with the logarithmic derivative of the
    open transfer matrix at u = 0."""
    rep = VerificationReport("hamiltonian", tolerance=tol)
    h_sum = hamiltonian(params).mat
    h_exact = hamiltonian_from_transfer(params).mat
    rep.record(rel_residual(h_sum, h_exact))
    return rep
