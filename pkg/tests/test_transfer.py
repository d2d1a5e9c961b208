import numpy as np

from a23chain import transfer


def test_commuting_family(params2):
    rep = transfer.check_commuting_family(params2, samples=5)
    assert rep.passed, str(rep)


def test_special_values(params2):
    rep = transfer.check_special_values(params2)
    assert rep.passed, str(rep)


def test_operator_identities(params2):
    rep = transfer.check_operator_identities(params2)
    assert rep.passed, str(rep)


def test_periodic_identities(params2):
    rep = transfer.check_periodic_identities(params2)
    assert rep.passed, str(rep)


def test_projector_generation(params2):
    rep = transfer.check_projector_generation(params2)
    assert rep.passed, str(rep)


def test_monodromy_fusion(params2):
    rep = transfer.check_monodromy_fusion(params2, samples=2)
    assert rep.passed, str(rep)


def test_hamiltonian_matches_log_derivative():
    # homogeneous chain with generic boundary fields
    from a23chain.params import ModelParams
    p = ModelParams(eta=0.37, epsilon=0.23, epsilon_prime=-0.11,
                    thetas=(0.0, 0.0), n_sites=2)
    rep = transfer.check_hamiltonian(p)
    assert rep.passed, str(rep)


def test_hamiltonian_requires_homogeneous(params2):
    import pytest
    with pytest.raises(ValueError):
        transfer.hamiltonian(params2)


def test_hamiltonian_benchmark_point(benchmark_params):
    rep = transfer.check_hamiltonian(benchmark_params)
    assert rep.passed, str(rep)


def test_open_periodic_share_nothing_by_accident(params2):
    # open and periodic transfer matrices at one point genuinely differ
    t_open = transfer.transfer_open(0.3, params2).mat
    t_per = transfer.transfer_periodic(0.3, params2).mat
    assert np.max(np.abs(t_open - t_per)) > 1e-3
