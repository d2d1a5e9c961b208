import numpy as np

from a23chain import boundary


def test_reflection_equation(params2):
    rep = boundary.check_reflection_equation(params2, samples=20)
    assert rep.passed, str(rep)


def test_dual_reflection_equation(params2):
    rep = boundary.check_dual_reflection_equation(params2, samples=20)
    assert rep.passed, str(rep)


def test_fused_reflection_equations(params2):
    rep = boundary.check_fused_reflection_equations(params2, samples=10)
    assert rep.passed, str(rep)


def test_rank1_k_fusion(params2):
    rep = boundary.check_rank1_k_fusion(params2, samples=15)
    assert rep.passed, str(rep)


def test_rank6_k_fusion(params2):
    rep = boundary.check_rank6_k_fusion(params2, samples=15)
    assert rep.passed, str(rep)


def test_rank4_k_fusion(params2):
    rep = boundary.check_rank4_k_fusion(params2, samples=15)
    assert rep.passed, str(rep)


def test_k_minus_identity_at_zero(params2):
    # the reflection matrix reduces to a scalar at u = 0
    km = boundary.build_k_minus(0.0, params2).mat
    scale = km[0, 0]
    assert abs(scale) > 1e-12
    assert np.max(np.abs(km - scale * np.eye(4))) / abs(scale) < 1e-12
