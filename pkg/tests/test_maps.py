"""Fixed points, multipliers, critical sets, and the conjugate quadratic family."""

import cmath

import numpy as np
import pytest

from traubdyn.maps import (
    HypothesisViolated,
    TraubMap,
    classify_multiplier,
    gdelta_critical_points,
    gdelta_eval,
    gdelta_map,
)
from traubdyn.poly import Polynomial
from traubdyn.sphere import INF, chordal, is_inf

P3 = Polynomial([-1.0, 0, 0, 1.0])  # z^3 - 1


def test_newton_limit_at_zero_damping():
    m = TraubMap(P3, 0.0)
    z = 0.7 + 0.2j
    pz, dpz = P3(z), P3.derivative()(z)
    assert m.traub_step(z) == z - pz / dpz


def test_step_against_direct_formula(seed=0):
    rng = np.random.default_rng(seed)
    m = TraubMap(P3, 0.6)
    dp = P3.derivative()
    for _ in range(100):
        z = complex(*(rng.uniform(-2, 2, 2)))
        if abs(dp(z)) < 1e-3:
            continue
        n = z - P3(z) / dp(z)
        expect = n - 0.6 * P3(n) / dp(z)
        assert abs(m.traub_step(z) - expect) < 1e-12


def test_pole_maps_to_infinity():
    m = TraubMap(P3, 1.0)
    assert is_inf(m.traub_step(0.0))


def test_roots_are_fixed():
    m = TraubMap(P3, 1.0)
    for r, _ in m.roots:
        assert chordal(m.traub_step(r), r) < 1e-12


def test_root_multiplier_closed_form():
    m = TraubMap(P3, 1.0)
    fp = m.root_multiplier(1.0, 1)
    assert fp.kind == "superattracting"
    fp2 = m.root_multiplier(1.0, 2)
    assert abs(fp2.multiplier - (0.5 - 1.0 * 0.5**2 / 2)) < 1e-14
    with pytest.raises(ValueError):
        m.root_multiplier(1.0, 0)


def test_infinity_classification():
    # d = 3: boundary circle |delta - 27/4| = 81/8
    m = TraubMap(P3, 1.0)
    fp = m.infinity_class()
    assert fp.kind == "repelling"
    far = TraubMap(P3, 27.0 / 4.0 + 11.0)
    assert far.infinity_class().kind == "attracting"
    assert TraubMap(P3, 27.0 / 4.0).infinity_class() is None


def test_infinity_multiplier_fd_matches():
    m = TraubMap(P3, 1.0)
    lam = m.infinity_class().multiplier
    fd = m.infinity_multiplier_fd()
    assert abs(fd - lam) < 1e-4 * (1 + abs(lam))


def test_normal_form_cubic_reference():
    # delta = 1: (46 z^9 + 42 z^6 - 6 z^3 - 1) / (81 z^8)
    nf = TraubMap(P3, 1.0).normal_form()
    np.testing.assert_allclose(
        nf.num.coeffs, [-1, 0, 0, -6, 0, 0, 42, 0, 0, 46], atol=1e-12
    )
    np.testing.assert_allclose(nf.den.coeffs, [0] * 8 + [81], atol=1e-12)


def test_critical_set_reference_counts():
    for delta, nfree in ((0.5, 6), (1.0, 3), (27.0 / 4.0, 4)):
        cs = TraubMap(P3, delta).critical_set()
        assert len(cs.free) == nfree
        assert cs.total_multiplicity == 2 * cs.map_degree - 2
    # at the degeneracy infinity itself is a branch point
    cs = TraubMap(P3, 27.0 / 4.0).critical_set()
    assert any(is_inf(z) for z in cs.free)


def test_critical_set_quartic_counts():
    p4 = Polynomial([-1.0, 0, 0, 0, 1.0])
    for delta, nfree in ((0.5, 12), (1.0, 8), (256.0 / 27.0, 10)):
        cs = TraubMap(p4, delta).critical_set()
        assert len(cs.free) == nfree
        assert cs.total_multiplicity == 2 * cs.map_degree - 2


def test_critical_set_requires_hypotheses():
    with pytest.raises(HypothesisViolated):
        TraubMap(P3, 0.0).critical_set()
    with pytest.raises(HypothesisViolated):
        TraubMap.from_roots([1.0, 1.0, -1.0], 1.0).critical_set()


def test_special_form_double_root():
    a = 0.7 - 0.3j
    m = TraubMap.from_roots([a, a], 2.0)
    slope, intercept = m.special_form()
    assert abs(slope - (0.5 - 2.0 / 8.0)) < 1e-14
    z = 1.5 + 1.0j
    assert abs(m.traub_step(z) - (slope * z + intercept)) < 1e-12


def test_special_form_pure_power():
    m = TraubMap(Polynomial([0, 0, 0, 1.0]), 1.0, roots=[(0j, 3)])
    slope, intercept = m.special_form()
    expect = (2.0 / 3.0) * (1.0 - 4.0 / 27.0)
    assert abs(slope - expect) < 1e-14 and intercept == 0
    assert TraubMap(P3, 1.0).special_form() is None


def test_multiple_root_step_resolves():
    m = TraubMap.from_roots([1.0, 1.0, -2.0], 1.0)
    z = 1.0
    # the double root is fixed despite p' vanishing there
    assert abs(m.traub_step(z) - 1.0) < 1e-12


def test_classify_multiplier_bands():
    assert classify_multiplier(0.0) == "superattracting"
    assert classify_multiplier(0.5) == "attracting"
    assert classify_multiplier(2.0) == "repelling"
    assert classify_multiplier(cmath.exp(0.3j)) == "indifferent"


def test_gdelta_formula_and_fixed_points():
    g = gdelta_map(0.5)
    np.testing.assert_allclose(g.num.coeffs, [0, 0, 0.5, 2.0, 1.0])
    np.testing.assert_allclose(g.den.coeffs, [1.0, 2.0, 0.5])
    # 0 and infinity are the images of the two roots: both superattracting
    assert gdelta_eval(0.5, 0.0) == 0.0
    assert is_inf(gdelta_eval(0.5, INF))


def test_gdelta_critical_points_product_one(seed=2):
    rng = np.random.default_rng(seed)
    for _ in range(20):
        delta = complex(*(rng.uniform(-2, 2, 2)))
        if abs(delta) < 0.05 or abs(delta - 1) < 1e-6:
            continue
        cp, cm = gdelta_critical_points(delta)
        assert abs(cp * cm - 1.0) < 1e-9
        # both are genuinely critical: the derivative vanishes there
        h = 1e-6
        for c in (cp, cm):
            fd = (gdelta_eval(delta, c + h) - gdelta_eval(delta, c - h)) / (2 * h)
            assert abs(fd) < 1e-4 * (1 + abs(gdelta_eval(delta, c)))


def test_gdelta_critical_points_limit_and_errors():
    cp, cm = gdelta_critical_points(1.0)
    assert cp == 0 and is_inf(cm)
    with pytest.raises(ValueError):
        gdelta_critical_points(0.0)


def test_degree_validation():
    with pytest.raises(ValueError):
        TraubMap(Polynomial([1.0, 1.0]), 1.0)
