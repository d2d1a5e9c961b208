import numpy as np

from a23chain import spectrum
from a23chain.params import ModelParams


def test_joint_spectrum_open(params2):
    rep = spectrum.check_joint_spectrum(params2, kind="open")
    assert rep.passed, str(rep)


def test_joint_spectrum_periodic(params2):
    rep = spectrum.check_joint_spectrum(params2, kind="periodic", tol=1e-7)
    assert rep.passed, str(rep)


def test_eigen_identities_open(params2):
    rep = spectrum.verify_eigen_identities(params2, kind="open")
    assert rep.passed, str(rep)


def test_eigen_identities_periodic(params2):
    rep = spectrum.verify_eigen_identities(params2, kind="periodic")
    assert rep.passed, str(rep)


def test_asymptotic_charges_open(benchmark_params):
    spec, numbers, worst = spectrum.asymptotic_charges(benchmark_params, "open")
    assert worst < 1e-4
    assert len(numbers) == 16
    # |m| realized as 0..2 for two sites
    assert set(numbers) <= {0, 1, 2}


def test_asymptotic_charges_periodic():
    params = ModelParams(eta=0.4, epsilon=0.0, epsilon_prime=0.0,
                         thetas=(0.0, 0.0), n_sites=2)
    spec, numbers, worst = spectrum.asymptotic_charges(params, "periodic")
    assert worst < 1e-4
    for m1, m2 in numbers:
        assert 0 <= m1 <= 2 and abs(m2) <= 2
