"""Degeneracy projectors and the fused 24x24 R-matrix on C^6 x C^4.

The fundamental R-matrix degenerates to a rank-1 projector at
u = 4 eta + i pi and to a rank-6 projector at u = 2 eta.  Sandwiching a
product of two fundamental R-matrices between rank-6 projectors yields a
fused R-matrix with a 6-dimensional auxiliary space; that matrix in turn
degenerates to a rank-4 projector at u = 3 eta, and re-projecting there
brings one back to the fundamental R-matrix up to a diagonal similarity.

Both the projected construction (`fuse_r_pair`) and the closed-form
entrywise builder (`build_fused_r`) are provided; the checks confirm they
agree and that the fused matrix satisfies unitarity, crossing unitarity,
periodicity and the mixed Yang-Baxter equation.
"""

from __future__ import annotations

import numpy as np

from . import rmatrix
from .operators import LabeledOperator, embed, permutation_16, rel_residual
from .reporting import VerificationReport

IPI = 1j * np.pi


# ---------------------------------------------------------------------------
# projector frames


def _ket16(pairs) -> np.ndarray:
    v = np.zeros(16, dtype=complex)
    for coeff, (k, l) in pairs:
        v[(k - 1) * 4 + (l - 1)] = coeff
    return v


def _ket24(pairs) -> np.ndarray:
    v = np.zeros(24, dtype=complex)
    for coeff, (k, l) in pairs:
        v[(k - 1) * 4 + (l - 1)] = coeff
    return v


def psi0(eta) -> np.ndarray:
    """Unit vector spanning the rank-1 degeneracy of R(4 eta + i pi)."""
    n = 1 / (2 * np.cosh(eta))
    return _ket16([(n * np.exp(-eta), (1, 4)), (n, (2, 3)),
                   (n, (3, 2)), (n * np.exp(eta), (4, 1))])


def frame_rank1(eta, swapped: bool = False) -> np.ndarray:
    """16x1 orthonormal frame of the rank-1 projector."""
    v = psi0(eta)
    if swapped:
        v = permutation_16() @ v
    return v.reshape(16, 1)


def frame_rank6(eta, swapped: bool = False) -> np.ndarray:
    """16x6 orthonormal frame spanning the range of R(2 eta).

    The swapped frame spans the range of R21(2 eta) and is the factor
    swap of the direct one.
    """
    ch = np.cosh(eta)
    sh = np.sinh(eta)
    n1 = 1 / np.sqrt(2 * ch)
    n3 = 1 / (np.sqrt(2) * ch)
    s2 = 1 / np.sqrt(2)
    cols = [
        _ket16([(n1 * np.exp(-eta / 2), (1, 2)), (-n1 * np.exp(eta / 2), (2, 1))]),
        _ket16([(n1 * np.exp(-eta / 2), (1, 3)), (-n1 * np.exp(eta / 2), (3, 1))]),
        _ket16([(n3 * sh, (2, 3)), (n3 * sh, (3, 2)), (n3, (1, 4)), (-n3, (4, 1))]),
        _ket16([(s2, (2, 3)), (-s2, (3, 2))]),
        _ket16([(n1 * np.exp(-eta / 2), (2, 4)), (-n1 * np.exp(eta / 2), (4, 2))]),
        _ket16([(n1 * np.exp(-eta / 2), (3, 4)), (-n1 * np.exp(eta / 2), (4, 3))]),
    ]
    f = np.column_stack(cols)
    if swapped:
        f = permutation_16() @ f
    return f


def frame_rank4(eta, swapped: bool = False) -> np.ndarray:
    """24x4 orthonormal frame spanning the range of the fused R at 3 eta.

    The swapped frame spans the range of the transposed-order fused
    matrix and is obtained by eta -> -eta (the k/l index roles already
    match in this storage order).
    """
    if swapped:
        eta = -eta
    ch = np.cosh(eta)
    sh = np.sinh(eta)
    sq = np.sqrt(ch + 0j)
    n1 = 1 / np.sqrt(2 * ch + np.exp(3 * eta))
    n2 = 1 / np.sqrt(1 + 2 * np.cosh(2 * eta))
    n4 = 1 / np.sqrt(2 * ch + np.exp(-3 * eta))
    cols = [
        _ket24([(n1 * sq, (1, 3)), (-n1 * sq, (2, 2)),
                (n1 * np.exp(1.5 * eta), (4, 1))]),
        _ket24([(n2 * np.exp(-eta / 2) * sq, (1, 4)), (-n2 * ch, (3, 2)),
                (-n2 * sh, (4, 2)), (n2 * np.exp(eta / 2) * sq, (5, 1))]),
        _ket24([(n2 * np.exp(-eta / 2) * sq, (2, 4)), (-n2 * ch, (3, 3)),
                (n2 * sh, (4, 3)), (n2 * np.exp(eta / 2) * sq, (6, 1))]),
        _ket24([(n4 * sq, (6, 2)), (-n4 * sq, (5, 3)),
                (n4 * np.exp(-1.5 * eta), (4, 4))]),
    ]
    return np.column_stack(cols)


def projector_rank1(eta, swapped: bool = False) -> LabeledOperator:
    f = frame_rank1(eta, swapped)
    return LabeledOperator((4, 4), f @ f.conj().T)


def projector_rank6(eta, swapped: bool = False) -> LabeledOperator:
    f = frame_rank6(eta, swapped)
    return LabeledOperator((4, 4), f @ f.conj().T)


def projector_rank4(eta, swapped: bool = False) -> LabeledOperator:
    f = frame_rank4(eta, swapped)
    return LabeledOperator((6, 4), f @ f.conj().T)


# ---------------------------------------------------------------------------
# fused R-matrix

# Sparsity pattern of the 24x24 fused R-matrix: (row, col, sign, index into
# the list returned by _fused_weights), 1-based rows/cols.
_LAYOUT = (
    (1, 1, 1, 1), (2, 2, 1, 1), (3, 3, 1, 2), (3, 6, 1, 7), (3, 9, 1, 8),
    (3, 13, 1, 10), (4, 4, 1, 2), (4, 10, 1, 9), (4, 14, 1, 11),
    (4, 17, 1, 12), (5, 5, 1, 1), (6, 3, 1, 7), (6, 6, 1, 2), (6, 9, 1, 8),
    (6, 13, -1, 10), (7, 7, 1, 1), (8, 8, 1, 2), (8, 11, 1, 9),
    (8, 15, -1, 11), (8, 21, 1, 12), (9, 3, 1, 13), (9, 6, 1, 13),
    (9, 9, 1, 3), (10, 4, 1, 14), (10, 10, 1, 4), (10, 14, 1, 15),
    (10, 17, 1, 9), (11, 8, 1, 14), (11, 11, 1, 4), (11, 15, -1, 15),
    (11, 21, 1, 9), (12, 12, 1, 3), (12, 19, 1, 8), (12, 22, 1, 8),
    (13, 3, 1, 16), (13, 6, -1, 16), (13, 13, 1, 5), (14, 4, 1, 17),
    (14, 10, -1, 15), (14, 14, 1, 6), (14, 17, -1, 11), (15, 8, -1, 17),
    (15, 11, 1, 15), (15, 15, 1, 6), (15, 21, 1, 11), (16, 16, 1, 5),
    (16, 19, -1, 10), (16, 22, 1, 10), (17, 4, 1, 18), (17, 10, 1, 14),
    (17, 14, -1, 17), (17, 17, 1, 2), (18, 18, 1, 1), (19, 12, 1, 13),
    (19, 16, -1, 16), (19, 19, 1, 2), (19, 22, 1, 7), (20, 20, 1, 1),
    (21, 8, 1, 18), (21, 11, 1, 14), (21, 15, 1, 17), (21, 21, 1, 2),
    (22, 12, 1, 13), (22, 16, 1, 16), (22, 19, 1, 7), (22, 22, 1, 2),
    (23, 23, 1, 1), (24, 24, 1, 1),
)


def _fused_weights(u, eta):
    sh, ch, e = np.sinh, np.cosh, np.exp
    sq = np.sqrt(np.cosh(eta) + 0j)
    w8 = -4 * e(-u / 2) * sh(eta) * sq * sh((u - 3 * eta) / 2)
    w9 = -4 * e(-u / 2 + eta) * sh(eta) * sq * ch((u - eta) / 2)
    w10 = 4 * e(-u / 2) * sh(eta) * sq * ch((u - 3 * eta) / 2)
    w11 = 4 * e(-u / 2 + eta) * sh(eta) * sq * sh((u - eta) / 2)
    return (
        2 * sh(u - 3 * eta),
        2 * sh(u - eta),
        4 * sh((u - 3 * eta) / 2) * ch((u - eta) / 2),
        2 * (sh(u - 2 * eta) + sh(eta) * ch(2 * eta)),
        4 * sh((u - eta) / 2) * ch((u - 3 * eta) / 2),
        2 * (sh(u - 2 * eta) - sh(eta) * ch(2 * eta)),
        -2 * sh(2 * eta),
        w8,
        w9,
        w10,
        w11,
        2 * e(-eta) * sh(2 * eta),
        -e(u) * w8,
        e(u - 2 * eta) * w9,
        -2 * sh(eta) * sh(2 * eta),
        e(u) * w10,
        -e(u - 2 * eta) * w11,
        2 * e(eta) * sh(2 * eta),
    )


def build_fused_r(u, eta) -> LabeledOperator:
    """Fused R-matrix on C^6 x C^4, from its closed-form entries."""
    w = _fused_weights(u, eta)
    r = np.zeros((24, 24), dtype=complex)
    for row, col, sign, idx in _LAYOUT:
        r[row - 1, col - 1] = sign * w[idx - 1]
    return LabeledOperator((6, 4), r)


def build_fused_r21(u, eta) -> LabeledOperator:
    """Fused R with swapped space roles; equals the plain transpose."""
    return LabeledOperator((6, 4), build_fused_r(u, eta).mat.T)


def build_m_bar(eta) -> LabeledOperator:
    """Crossing matrix of the 6-dimensional fused space."""
    d = np.exp(np.array([2, 2, 0, 0, -2, -2], dtype=float) * eta)
    return LabeledOperator((6,), np.diag(d).astype(complex))


def build_v_bar() -> LabeledOperator:
    """Signed permutation governing i*pi periodicity in the fused space."""
    v = np.zeros((6, 6))
    v[0, 0] = 1.0
    v[1, 1] = -1.0
    v[2, 3] = 1.0
    v[3, 2] = 1.0
    v[4, 4] = -1.0
    v[5, 5] = 1.0
    return LabeledOperator((6,), v)


def build_s_bar(eta) -> LabeledOperator:
    """Diagonal similarity mapping the re-projected fused R back to the
    fundamental one."""
    def s(e):
        return np.sqrt((1 + 2 * np.cosh(2 * e)) * (np.exp(3 * e) + 2 * np.cosh(e)) + 0j)
    ratio = np.sinh(eta) / np.sinh(3 * eta)
    d = np.array([-np.exp(-eta / 2) * ratio * s(eta), 1.0, -1.0,
                  np.exp(eta / 2) * ratio * s(-eta)], dtype=complex)
    return LabeledOperator((4,), np.diag(d))


def fuse_r_pair(u, eta, swapped: bool = False) -> LabeledOperator:
    """Fused R-matrix obtained directly from the projected construction.

    Compresses R(u - eta) R(u + eta) between rank-6 frames and divides
    by the scalar fusion factor.  Has removable singularities where that
    factor vanishes; `build_fused_r` is the safe evaluator.
    """
    dims = (4, 4, 4)
    f = frame_rank6(eta, swapped)
    if swapped:
        x = (embed(rmatrix.build_r(u - eta, eta).mat, (2, 1), dims)
             @ embed(rmatrix.build_r(u + eta, eta).mat, (2, 0), dims))
    else:
        x = (embed(rmatrix.build_r(u - eta, eta).mat, (1, 2), dims)
             @ embed(rmatrix.build_r(u + eta, eta).mat, (0, 2), dims))
    fi = np.kron(f, np.eye(4))
    mat = fi.conj().T @ x @ fi / rmatrix.rho_tilde0(u - eta, eta)
    return LabeledOperator((6, 4), mat)


# ---------------------------------------------------------------------------
# checks


def check_degeneracies(eta, tol: float = 1e-10) -> VerificationReport:
    """R(4 eta + i pi), R(2 eta) and fused R(3 eta) are projector times
    constant; the stated frames span their ranges."""
    rep = VerificationReport("fusion-degeneracies", tolerance=tol)
    r1 = rmatrix.build_r(4 * eta + IPI, eta).mat
    p1 = projector_rank1(eta).mat
    rep.record(rel_residual(p1 @ r1, r1))
    sv = np.linalg.svd(r1, compute_uv=False)
    rep.record(sv[1] / sv[0])
    r6 = rmatrix.build_r(2 * eta, eta).mat
    p6 = projector_rank6(eta).mat
    rep.record(rel_residual(p6 @ r6, r6))
    sv = np.linalg.svd(r6, compute_uv=False)
    rep.record(sv[6] / sv[0])
    rb = build_fused_r(3 * eta, eta).mat
    p4 = projector_rank4(eta).mat
    rep.record(rel_residual(p4 @ rb, rb))
    sv = np.linalg.svd(rb, compute_uv=False)
    rep.record(sv[4] / sv[0])
    # swapped orientations
    p = permutation_16()
    r1s = p @ r1 @ p
    rep.record(rel_residual(projector_rank1(eta, swapped=True).mat @ r1s, r1s))
    r6s = p @ r6 @ p
    rep.record(rel_residual(projector_rank6(eta, swapped=True).mat @ r6s, r6s))
    rbs = build_fused_r21(3 * eta, eta).mat
    rep.record(rel_residual(projector_rank4(eta, swapped=True).mat @ rbs, rbs))
    for f in (frame_rank6(eta), frame_rank4(eta), frame_rank4(eta, swapped=True)):
        gram = f.conj().T @ f
        rep.record(float(np.max(np.abs(gram - np.eye(f.shape[1])))))
    return rep


def check_rank1_fusion(eta, samples: int = 20, seed: int = 0,
                       tol: float = 1e-10) -> VerificationReport:
    """P1 R23(u) R13(u + 4 eta + i pi) P1 collapses to a scalar times P1."""
    rep = VerificationReport("rank1-fusion", tolerance=tol)
    rng = np.random.default_rng(seed)
    dims = (4, 4, 4)
    p1 = embed(projector_rank1(eta).mat, (0, 1), dims)
    for u in rmatrix._sample_points(rng, samples):
        x = (embed(rmatrix.build_r(u, eta).mat, (1, 2), dims)
             @ embed(rmatrix.build_r(u + 4 * eta + IPI, eta).mat, (0, 2), dims))
        scalar = rmatrix.w_a(u, eta) * rmatrix.w_c(u + 4 * eta + IPI, eta)
        rep.record(rel_residual(p1 @ x @ p1, scalar * p1))
    return rep


def check_fused_construction(eta, samples: int = 20, seed: int = 0,
                             tol: float = 1e-10) -> VerificationReport:
    """Closed-form fused R agrees with the projected construction, in
    both space orderings."""
    rep = VerificationReport("fused-construction", tolerance=tol)
    rng = np.random.default_rng(seed)
    for u in rmatrix._sample_points(rng, samples):
        rep.record(rel_residual(build_fused_r(u, eta).mat,
                                fuse_r_pair(u, eta).mat))
        rep.record(rel_residual(build_fused_r21(u, eta).mat,
                                fuse_r_pair(u, eta, swapped=True).mat))
    return rep


def check_fused_unitarity(eta, samples: int = 50, seed: int = 0,
                          tol: float = 1e-10) -> VerificationReport:
    rep = VerificationReport("fused-unitarity", tolerance=tol)
    rng = np.random.default_rng(seed)
    for u in rmatrix._sample_points(rng, samples):
        lhs = build_fused_r(u, eta).mat @ build_fused_r21(-u, eta).mat
        rep.record(rel_residual(lhs, rmatrix.rho2(u, eta) * np.eye(24)))
    return rep


def check_fused_crossing_unitarity(eta, samples: int = 50, seed: int = 0,
                                   tol: float = 1e-10) -> VerificationReport:
    """Both partial-transpose forms of fused crossing unitarity."""
    rep = VerificationReport("fused-crossing-unitarity", tolerance=tol)
    rng = np.random.default_rng(seed)
    mb = np.kron(build_m_bar(eta).mat, np.eye(4))
    m2 = np.kron(np.eye(6), rmatrix.build_m(eta).mat)
    for u in rmatrix._sample_points(rng, samples):
        r = build_fused_r(u, eta)
        rb = build_fused_r21(-u + 8 * eta + 2 * IPI, eta)
        target = rmatrix.rho2(u - 4 * eta - IPI, eta) * np.eye(24)
        lhs1 = (r.transpose_factor(0).mat @ mb
                @ rb.transpose_factor(0).mat @ np.linalg.inv(mb))
        lhs2 = (r.transpose_factor(1).mat @ np.linalg.inv(m2)
                @ rb.transpose_factor(1).mat @ m2)
        rep.record(rel_residual(lhs1, target))
        rep.record(rel_residual(lhs2, target))
    return rep


def check_fused_periodicity(eta, samples: int = 50, seed: int = 0,
                            tol: float = 1e-10) -> VerificationReport:
    """Fused R(u + i pi) = -Vbar R(u) Vbar^{-1} in the 6-dim factor."""
    rep = VerificationReport("fused-periodicity", tolerance=tol)
    rng = np.random.default_rng(seed)
    vb = build_v_bar().mat
    v1 = np.kron(vb, np.eye(4))
    v1i = np.kron(np.linalg.inv(vb), np.eye(4))
    for u in rmatrix._sample_points(rng, samples):
        lhs = build_fused_r(u + IPI, eta).mat
        rhs = -v1 @ build_fused_r(u, eta).mat @ v1i
        rep.record(rel_residual(lhs, rhs))
    return rep


def check_mixed_ybe(eta, samples: int = 30, seed: int = 0,
                    tol: float = 1e-10) -> VerificationReport:
    """Yang-Baxter equation with a 6-dimensional first space."""
    rep = rmatrix.check_ybe(eta, samples=samples, seed=seed, tol=tol,
                            r_builder_a=build_fused_r, dims_a=(6,))
    rep.name = "mixed-yang-baxter"
    return rep


def check_reprojection(eta, samples: int = 20, seed: int = 0,
                       tol: float = 1e-10) -> VerificationReport:
    """Rank-4 compression of R23(u) Rfused13(u + 3 eta) reproduces the
    fundamental R up to the diagonal similarity, in both orderings."""
    rep = VerificationReport("fused-reprojection", tolerance=tol)
    rng = np.random.default_rng(seed)
    dims = (6, 4, 4)
    p = permutation_16()
    s = build_s_bar(eta).mat
    sb = np.kron(s, np.eye(4))
    sbi = np.kron(np.linalg.inv(s), np.eye(4))
    g = np.kron(frame_rank4(eta), np.eye(4))
    gs = np.kron(frame_rank4(eta, swapped=True), np.eye(4))
    for u in rmatrix._sample_points(rng, samples):
        scalar = rmatrix.rho_tilde1(u, eta)
        x = (embed(rmatrix.build_r(u, eta).mat, (1, 2), dims)
             @ embed(build_fused_r(u + 3 * eta, eta).mat, (0, 2), dims))
        rhs = scalar * (sb @ rmatrix.build_r(u + 2 * eta + IPI, eta).mat @ sbi)
        rep.record(rel_residual(g.conj().T @ x @ g, rhs))
        xs = (embed(rmatrix.build_r(u, eta).mat, (2, 1), dims)
              @ embed(build_fused_r21(u + 3 * eta, eta).mat, (0, 2), dims))
        rhs2 = scalar * (sb @ (p @ rmatrix.build_r(u + 2 * eta + IPI, eta).mat @ p) @ sbi)
        rep.record(rel_residual(gs.conj().T @ xs @ gs, rhs2))
    return rep
