import numpy as np
import pytest

from a23chain import bethe, transfer
from a23chain.params import ModelParams


@pytest.fixture(scope="module")
def bench():
    return ModelParams(**bethe.BENCHMARK_PARAMS)


def test_h_parameter(bench):
    # L1 = 1 value quoted to four decimals
    h = bethe.h_parameter(1, bench)
    assert abs(h - (-4) * (2 * np.cosh(-0.8) - 2 * np.cosh(1.6))) < 1e-12
    assert abs(h - 9.9202) < 5e-4


def test_q_function_symmetries(bench):
    st = bethe.BetheState((0.3 + 0.2j,), (0.7 - 0.1j,), bench, "open")
    q1, q2 = bethe.q_functions(st)
    st_neg = bethe.BetheState((-0.3 - 0.2j,), (-0.7 + 0.1j,), bench, "open")
    q1n, q2n = bethe.q_functions(st_neg)
    for u in (0.11, 0.5 - 0.3j):
        assert abs(q1(u) - q1n(u)) < 1e-12
        assert abs(q2(u) - q2n(u)) < 1e-12
        assert abs(q1(u + 4j * np.pi) - q1(u)) < 1e-10
        assert abs(q2(u + 2j * np.pi) - q2(u)) < 1e-10


def test_empty_state_is_exact(bench):
    st = bethe.BetheState((), (), bench, "open")
    # no roots: residuals vacuously empty, eigenvalue matches the
    # scalar special value at u = 0
    assert len(bethe.bae_residuals(st)) == 0
    from a23chain import rmatrix
    scalar = 4 * np.cosh(bench.eta) ** 2 * np.prod(
        [rmatrix.rho1(-t, bench.eta) for t in bench.thetas])
    assert abs(bethe.lambda_open(1e-8, st) - scalar) < 1e-6


def test_reference_seed_state(bench):
    st = bethe.BetheState(*bethe.BENCHMARK_SEED_L1, bench, "open")
    res = bethe.bae_residuals(st)
    assert np.max(np.abs(res)) < 1e-3  # four-decimal seed precision
    lam = bethe.lambda_open(0.2, st)
    assert abs(lam - 0.6884) < 1e-3


def test_newton_polish_reference_seed(bench):
    st = bethe.newton_polish(bethe.BetheState(*bethe.BENCHMARK_SEED_L1,
                                              bench, "open"))
    assert st.residual_max < 1e-10
    assert abs(bethe.lambda_open(0.2, st) - 0.6884) < 1e-3


def test_special_value_relations_at_solution(bench):
    st = bethe.newton_polish(bethe.BetheState(*bethe.BENCHMARK_SEED_L1,
                                              bench, "open"))
    eta = bench.eta
    # small offsets dodge the removable singularities at the exact points
    lam0 = bethe.lambda_open(1e-7, st)
    lam_cross = bethe.lambda_open(4 * eta + 1j * np.pi + 1e-7, st)
    assert abs(lam0 - lam_cross) / abs(lam0) < 1e-4
    # fused-value relation with the corrected constant
    n = bench.n_sites
    const = -np.sinh(2 * eta) ** 2 / 2 ** (2 * n + 1)
    ratio = (bethe.lambda_open(2 * eta + 1e-6, st)
             / bethe.lambda_bar_open(eta + 1e-6, st))
    assert abs(ratio - const) < 1e-5


def test_lambda_bar_matches_fused_spectrum(bench):
    # the doubled h-term weighting is pinned here: with singly-weighted
    # h-terms the L = 1 state misses the fused eigenvalue by ~1e-1
    from a23chain import spectrum
    st = bethe.newton_polish(bethe.BetheState(*bethe.BENCHMARK_SEED_L1,
                                              bench, "open"))
    spec = spectrum.joint_diagonalize(bench, "open")
    for u in (0.31 + 0.22j, -0.47 + 0.1j):
        lam = bethe.lambda_open(u, st)
        i = int(np.argmin(np.abs(spec.eigenvalues(u) - lam)))
        ex = spec.fused_eigenvalues(u)[i]
        assert abs(spec.eigenvalues(u)[i] - lam) < 1e-8
        assert abs(bethe.lambda_bar_open(u, st) - ex) / abs(ex) < 1e-8


def test_solve_l1_sector(bench):
    states = bethe.solve_bae(bench, "open", 1, 1,
                             bethe.SolveConfig(starts=300, seed=3))
    vals = [bethe.lambda_value(0.2, st) for st in states]
    assert any(abs(v - 0.6884) < 1e-3 for v in vals)


def test_periodic_scalar_sector():
    # one-site periodic chain: the single-root sector solves in closed
    # form at mu = i pi
    params = ModelParams(eta=0.4, epsilon=0.0, epsilon_prime=0.0,
                         thetas=(0.0,), n_sites=1)
    st = bethe.BetheState((1j * np.pi,), (), params, "periodic")
    res = bethe.bae_residuals(st)
    assert np.max(np.abs(res)) < 1e-12


def test_energy_invariant_under_canonicalization(bench):
    st = bethe.newton_polish(bethe.BetheState(*bethe.BENCHMARK_SEED_L1,
                                              bench, "open"))
    e1 = bethe.energy(st)
    e2 = bethe.energy(bethe.canonicalize(st))
    assert abs(e1 - e2) < 1e-8


def test_energy_matches_hamiltonian(bench):
    import scipy.linalg
    st = bethe.newton_polish(bethe.BetheState(*bethe.BENCHMARK_SEED_L1,
                                              bench, "open"))
    e = bethe.energy(st)
    h_eigs = scipy.linalg.eigvals(transfer.hamiltonian(bench).mat)
    assert np.min(np.abs(h_eigs - e)) < 1e-5


def test_canonicalize_strips(bench):
    st = bethe.BetheState((0.5 + 0.1j + 2j * np.pi,), (-0.25 + 1j * np.pi,),
                          bench, "open")
    out = bethe.canonicalize(st)
    assert abs(out.mu1[0] - (0.5 + 0.1j)) < 1e-12
    assert abs(out.mu2[0] - 0.25) < 1e-12  # negated into Re >= 0


def test_residual_alias_guards(bench):
    st = bethe.BetheState((0.3,), (0.4,), bench, "open")
    with pytest.raises(ValueError):
        bethe.bae_residuals_periodic(st)
    assert np.all(bethe.bae_residuals_open(st)
                  == bethe.bae_residuals(st))
