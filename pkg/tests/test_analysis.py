import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from exptower.analysis import (
    GridSpec, PowPhi, QuadPhi, Suitability, atlas_build, atlas_membership, bisect,
    bracket_root, certify_pow, certify_quad, constants_AB, contraction_check, f_pow,
    max_gap, minus_fixed_point, phi_measure, plus_fixed_points, quad_a, quad_lambda,
    scan_quad_extended, solve_quad_param, suitability_report, two_cycle,
)
from exptower.errors import NoCycle, OutOfRange
from exptower.evaluator import Interval, limit_interval
from exptower.words import parse_word
from exptower.xreal import INF, MINUS, NINF, PLUS, apply_sign

# Frozen oracles, computed once with scipy (lambertw, brentq, quad):
M_03, BIG_M_03 = 1.631340757267383, 5.937790078072092
M_MINUS = {0.3: -0.7891843692951978, 1.0: -0.5671432904097838, 3.0: -0.34996963165468004}
CYCLE_3 = (-0.6647397622791609, -0.13611988327877692)
A_ORACLE, B_ORACLE = 0.3942083955719354, 2.536729332081208
T_STAR = 1.9150080481545375
QUAD_03_M2_7 = 3.919093012053318   # int_{-2}^{7} dt / (1 + 0.3 t^2)


# roots

def test_bisect_and_bracket():
    r = bisect(lambda x: x * x - 2, 0.0, 2.0)
    assert abs(r - math.sqrt(2)) < 1e-15
    assert bracket_root(lambda x: x, -1.0, 1.0) == (0.0, 0.0)
    with pytest.raises(ValueError):
        bisect(lambda x: x * x + 1, -1.0, 1.0)


# fixed points

def test_plus_fixed_points():
    fp = plus_fixed_points(0.3)
    assert fp.m == pytest.approx(M_03, abs=1e-12)
    assert fp.M == pytest.approx(BIG_M_03, abs=1e-11)
    assert fp.m <= 1 / 0.3 <= fp.M
    fp = plus_fixed_points(1 / math.e)
    assert fp.m == pytest.approx(math.e, rel=1e-15) and fp.M == fp.m
    with pytest.raises(OutOfRange):
        plus_fixed_points(0.5)


@given(st.floats(0.01, 1 / math.e))
def test_plus_fixed_point_residuals(a):
    fp = plus_fixed_points(a)
    assert fp.m <= 1 / a <= fp.M
    # Near a = 1/e the roots are ill-conditioned; relative residuals stay small.
    assert abs(math.exp(a * fp.m) - fp.m) < 1e-9 * fp.m
    assert abs(math.exp(a * fp.M) - fp.M) < 1e-9 * fp.M


def test_minus_fixed_point():
    for a, oracle in M_MINUS.items():
        mf = minus_fixed_point(a)
        assert mf.m_minus == pytest.approx(oracle, abs=1e-13)
        assert mf.repulsive == (a > math.e)
    mf = minus_fixed_point(math.e)
    assert mf.m_minus == pytest.approx(-1 / math.e, abs=1e-12) and not mf.repulsive


@given(st.floats(0.01, 20))
def test_minus_fixed_point_residual(a):
    mf = minus_fixed_point(a)
    assert abs(mf.m_minus + math.exp(a * mf.m_minus)) < 1e-12


def test_two_cycle():
    tc = two_cycle(3.0)
    assert (tc.p, tc.q) == pytest.approx(CYCLE_3, abs=1e-11)
    assert max(tc.residuals) < 1e-12
    assert tc.p < tc.m_minus < tc.q
    assert tc.m_minus == pytest.approx(-0.3500, abs=1e-4)
    box = limit_interval(3.0, parse_word("(-)"), 4000)
    assert abs(box.lo - tc.p) < 1e-10 and abs(box.hi - tc.q) < 1e-10
    with pytest.raises(NoCycle):
        two_cycle(math.e)


@settings(max_examples=30, deadline=None)
@given(st.floats(2.9, 10.0))
def test_two_cycle_exchange(a):
    tc = two_cycle(a)
    assert abs(apply_sign(MINUS, a, tc.p) - tc.q) < 1e-9
    assert abs(apply_sign(MINUS, a, tc.q) - tc.p) < 1e-9
    assert tc.p < tc.m_minus < tc.q


# constants and certificates

def test_constants():
    c = constants_AB()
    assert c.A == pytest.approx(A_ORACLE, abs=1e-13)
    assert c.B == pytest.approx(B_ORACLE, abs=1e-12)
    assert round(c.A, 4) == 0.3942 and round(c.B, 4) == 2.5367
    assert abs(c.product - 1) < 1e-9
    assert abs(f_pow(c.A) - math.e) < 1e-9 and abs(f_pow(c.B) - math.e) < 1e-9


def test_pow_verdict_matches_interval():
    c = constants_AB()
    d = 1e-4
    for x in [c.A + d + k * (c.B - c.A - 2 * d) / 200 for k in range(201)]:
        assert certify_pow(x).verdict
    for x in (c.A - d, c.A / 2, 0.01, c.B + d, 3.0, 10.0):
        assert not certify_pow(x).verdict


def test_certify_pow_examples():
    p = certify_pow(1.0)
    assert p.nu == 2 and p.nu_prime == 2 and p.cond1_value == 2 and p.verdict
    assert not certify_pow(0.39).verdict
    # (x+1) x^{-1/(x+1)} evaluated by hand as exp(log(1.39) - log(0.39)/1.39).
    assert f_pow(0.39) == pytest.approx(math.exp(math.log(1.39) - math.log(0.39) / 1.39), rel=1e-14)
    assert f_pow(0.39) == pytest.approx(2.73661, abs=1e-5)
    assert certify_pow(2.5).verdict
    assert f_pow(2.5) == pytest.approx(2.694, abs=1e-3)


def test_certify_quad_examples():
    c = certify_quad(1.0, GridSpec(-40, 40, 100_000), lam=1.0)
    assert c.grid_min >= 1 - 1e-12 and c.verdict and c.lam_overridden

    c = certify_quad(math.e)
    assert c.t_param == pytest.approx(-1.0, abs=1e-7)
    assert c.lam == pytest.approx(math.e ** 2 / 3, rel=1e-12)
    assert c.convex_ok and c.verdict

    c = certify_quad(0.5)
    assert c.t_param is None and not c.verdict


def test_quad_range_endpoints():
    assert quad_a(-math.sqrt(3)) == pytest.approx(1.51, abs=5e-3)
    assert quad_a(math.sqrt(3)) == pytest.approx(0.66, abs=5e-3)


@given(st.floats(0.67, math.e))
def test_quad_parametrization(a):
    t = solve_quad_param(a)
    assert t is not None and -math.sqrt(3) <= t <= math.sqrt(3)
    assert abs(quad_a(t) - a) < 1e-12
    c = certify_quad(a, GridSpec(-40, 40, 20_000))
    assert c.lam == quad_lambda(t)


def test_scan_quad_extended():
    s = scan_quad_extended()
    assert s.t_star == pytest.approx(T_STAR, abs=1e-13)
    assert s.a_low == pytest.approx(0.577, abs=5e-4)
    assert s.a_low < quad_a(math.sqrt(3))


# measure

def test_measure_examples():
    assert phi_measure(QuadPhi(1.0), Interval(NINF, INF)) == pytest.approx(math.pi, rel=1e-15)
    assert phi_measure(QuadPhi(1.0), Interval(0.0, 1.0)) == pytest.approx(math.pi / 4, rel=1e-15)
    assert phi_measure(PowPhi(1.0, 2.0), Interval(NINF, INF)) == 4.0
    assert phi_measure(QuadPhi(0.3), Interval(-2.0, 7.0)) == pytest.approx(QUAD_03_M2_7, rel=1e-13)
    # a = 0.5, nu = 3: flat up to 2, then int_2^5 (t/2)^{-3} dt = 0.84.
    assert phi_measure(PowPhi(0.5, 3.0), Interval(0.0, 5.0)) == pytest.approx(2.84, rel=1e-13)
    assert phi_measure(QuadPhi(1.0), Interval(3.0, 3.0)) == 0.0


def test_contraction_example():
    chk = contraction_check(1.0, QuadPhi(1.0), Interval(0.0, 1.0))
    assert chk.m_before == pytest.approx(0.7854, abs=1e-4)
    assert chk.m_after_plus == pytest.approx(math.atan(math.e) - math.atan(1), rel=1e-14)
    assert chk.m_after_plus == pytest.approx(0.4328, abs=1e-4)
    assert chk.contracted and chk.m_after_plus == chk.m_after_minus
    chk = contraction_check(1.0, QuadPhi(1.0), Interval(2.0, 2.0))
    assert chk.m_before == chk.m_after_plus == chk.m_after_minus == 0 and chk.contracted


@pytest.mark.parametrize("a", [0.7, 1.0, 1.3, 2.0, math.e])
def test_certificate_measure_coherence(a):
    cert = certify_quad(a)
    assert cert.verdict
    phi = QuadPhi(cert.lam)
    rng = random.Random(int(a * 1000))
    for _ in range(1000):
        x, y = sorted((rng.uniform(-10, 10), rng.uniform(-10, 10)))
        if x == y:
            continue
        chk = contraction_check(a, phi, Interval(x, y))
        assert chk.contracted and chk.m_after_plus == chk.m_after_minus


@settings(max_examples=60, deadline=None)
@given(st.floats(0.4, 2.5), st.floats(-10, 10), st.floats(-10, 10))
def test_pow_measure_contracts(a, x, y):
    if not certify_pow(a).verdict or x == y:
        return
    x, y = min(x, y), max(x, y)
    chk = contraction_check(a, PowPhi(a, 1 + 1 / a), Interval(x, y))
    assert chk.m_after_plus == chk.m_after_minus
    assert chk.m_after_plus <= chk.m_before


# atlas

def test_atlas_depth_zero():
    atlas = atlas_build(0.3, 0)
    m = atlas.m
    assert m == pytest.approx(M_03, abs=1e-12)
    lo, mid, hi = atlas.components
    assert lo == Interval(NINF, -m) and hi == Interval(m, INF)
    assert mid.hi == pytest.approx(1 / m, rel=1e-14) and mid.lo == -mid.hi


def test_atlas_examples():
    atlas = atlas_build(0.3, 1)
    mem = atlas_membership(atlas, 1.0)
    assert mem.in_x and str(mem.witness) == "+"
    assert mem.piece.lo == pytest.approx(0.832, abs=1e-3)
    assert mem.piece.hi == pytest.approx(1.202, abs=1e-3)
    mem = atlas_membership(atlas, -2.0)
    assert mem.in_x and mem.kind == "ray" and str(mem.witness) == "-"
    with pytest.raises(OutOfRange, match="a ≤ 1/e"):
        atlas_build(0.5, 3)


@pytest.mark.parametrize("a", [0.1, 0.3, 0.36])
def test_fixed_point_never_covered(a):
    for depth in range(0, 9):
        atlas = atlas_build(a, depth)
        assert not atlas_membership(atlas, atlas.m).in_x


@pytest.mark.parametrize("a", [0.1, 0.3, 0.36])
def test_atlas_structure(a):
    atlas = atlas_build(a, 8)
    comps = atlas.components
    assert all(c1.hi <= c2.lo for c1, c2 in zip(comps, comps[1:]))
    for c in comps[1:-1]:
        assert -atlas.m <= c.lo and c.hi <= atlas.m


@pytest.mark.parametrize("a", [0.1, 0.3, 0.36])
def test_atlas_density_monotone(a):
    gaps = [max_gap(atlas_build(a, d)) for d in range(0, 11)]
    assert all(g2 <= g1 for g1, g2 in zip(gaps, gaps[1:]))


@pytest.mark.parametrize("a", [0.1, 0.3, 0.36])
def test_atlas_stability(a):
    for depth in range(0, 7):
        small, big = atlas_build(a, depth), atlas_build(a, depth + 1)
        for c in small.components:
            for s in (PLUS, MINUS):
                x, y = apply_sign(s, a, c.lo), apply_sign(s, a, c.hi)
                lo, hi = min(x, y), max(x, y)
                if lo == hi:
                    continue
                if hi == INF:
                    probe = lo + 1.0
                elif lo == NINF:
                    probe = hi - 1.0
                else:
                    probe = lo + (hi - lo) / 2
                target = big.component_of(probe)
                assert target is not None and target.lo <= lo and hi <= target.hi


# suitability

@pytest.mark.parametrize("a,verdict", [
    (1.0, Suitability.SUITABLE_CERTIFIED),
    (0.3, Suitability.NOT_SUITABLE_SMALL),
    (1 / math.e, Suitability.NOT_SUITABLE_SMALL),
    (0.38, Suitability.UNKNOWN),
    (3.0, Suitability.NOT_SUITABLE_LARGE),
    (math.e, Suitability.SUITABLE_CERTIFIED),
    (0.45, Suitability.SUITABLE_CERTIFIED),
])
def test_suitability(a, verdict):
    assert suitability_report(a).verdict is verdict


def test_suitability_one_has_both_certificates():
    rep = suitability_report(1.0)
    assert rep.quad.verdict and rep.pow.verdict
