import math

import pytest
from hypothesis import given, settings, strategies as st

from exptower.evaluator import classify, image_interval
from exptower.representer import (
    Verdict, alternate_expansion, eventually_decreasing, expand, residual, roundtrip,
)
from exptower.words import InfiniteWord
from exptower.xreal import INF, MINUS, NINF, PLUS, apply_sign

from conftest import bases

# Frozen oracle: f_+ f_+ f_- (m) at a = 0.3, m from lambertw.
LIMIT_03_AT_1 = 1.2018930008087148

targets = st.one_of(st.floats(-20, 20, allow_nan=False), st.sampled_from([INF, NINF, 0.0]))


def test_expand_examples():
    e = expand(1.0, INF, 5)
    assert str(e.word) == "(+)" and all(u == INF for u in e.orbit)

    e = expand(1.0, math.e, 6)
    assert str(e.word) == "+++-(+)"
    assert e.orbit[:5] == [math.e, 1.0, 0.0, NINF, INF]
    assert e.hit_zero_at == 2 and e.tail_periodic

    e = expand(1.0, -0.5, 4)
    # -0.5, -0.6931, -0.3665, -1.0037 are all negative, so every sign is minus.
    assert "".join(str(s) for s in e.signs) == "----"
    assert e.orbit[1:] == pytest.approx([-0.6931, -0.3665, -1.0037, 0.00371], abs=1e-4)


def test_alternate_expansion_examples():
    assert str(alternate_expansion(1.0, math.e, 6).word) == "++--(+)"
    assert alternate_expansion(1.0, -0.5, 4) is None
    alt = alternate_expansion(1.0, 0.0, 3)
    assert alt.signs[0] is MINUS and str(alt.word) == "--(+)"
    assert str(expand(1.0, 0.0, 3).word) == "+-(+)"


def test_residual_on_infinite_targets():
    assert residual(INF, INF) == 0.0
    assert residual(1e300, INF) == INF
    assert residual(2.0, 1.5) == 0.5


def test_eventually_decreasing():
    assert eventually_decreasing([1.0, 0.5, 0.1, 0.01])
    assert not eventually_decreasing([0.1, 0.1, 0.2, 0.2])
    assert eventually_decreasing([0.0, 0.0])


def test_roundtrip_examples():
    assert roundtrip(1.0, -0.5, 200, 1e-6).verdict is Verdict.REPRESENTED
    rt = roundtrip(1.0, INF, 10, 1e-6)
    assert rt.verdict is Verdict.REPRESENTED and rt.final_residual == 0.0
    rt = roundtrip(0.3, 1.0, 200, 1e-6)
    assert rt.verdict is Verdict.NOT_REPRESENTED
    assert str(rt.expansion.word) == "++-(+)"
    assert rt.values[-1] == pytest.approx(LIMIT_03_AT_1, abs=1e-9)


def test_plus_infinity_residual_exact_once_saturated():
    # u_1 = e, u_2 = e^e, u_3 = e^{e^e} are finite; overflow happens at n = 4.
    rt = roundtrip(1.0, INF, 10, 1e-6)
    assert rt.residuals[:3] == [INF, INF, INF]
    assert rt.residuals[3:] == [0.0] * 7


@settings(max_examples=100, deadline=None)
@given(bases, targets, st.integers(1, 40))
def test_expansion_consistency(a, t, n):
    e = expand(a, t, n)
    assert len(e.signs) == n
    for k in range(n):
        u_k, u_next = e.orbit[k], e.orbit[k + 1]
        back = apply_sign(e.signs[k], a, u_next)
        if math.isinf(u_k) or math.isinf(u_next) or u_k == 0:
            assert back == u_k
        else:
            # exp(a y) has relative error about (1 + |a y|) ulp.
            assert abs(back - u_k) <= 2 * math.ulp(u_k) * (2 + abs(a * u_next))


@settings(max_examples=100, deadline=None)
@given(bases, targets, st.integers(1, 30))
def test_target_in_every_expansion_interval(a, t, n):
    e = expand(a, t, n)
    for k in range(1, n + 1):
        iv = image_interval(a, e.signs[:k])
        scale = 4 * math.ulp(abs(t)) * (1 + abs(math.log(abs(t)))) if math.isfinite(t) and t else 0.0
        assert iv.lo - scale <= t <= iv.hi + scale


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5), st.floats(0.8, 2.0))
def test_widths_shrink_for_suitable_base(t, a):
    e = expand(a, t, 60)
    widths = [image_interval(a, e.signs[:k]).width for k in range(1, 61)]
    assert all(w2 <= w1 for w1, w2 in zip(widths, widths[1:]))
    assert widths[-1] < 1e-3


@settings(max_examples=40, deadline=None)
@given(st.floats(1 / math.e, 6.0, exclude_min=True))
def test_plus_infinity_expansion_is_all_plus(a):
    e = expand(a, INF, 20)
    assert isinstance(e.word, InfiniteWord) and str(e.word) == "(+)"
    assert all(s is PLUS for s in e.signs)
    # Just above 1/e the tower crawls past a near-tangency; away from it the
    # saturation is reached well inside the default step cap.
    if a >= 0.5:
        assert classify(a, e.word).limit == INF


@settings(max_examples=60, deadline=None)
@given(bases, targets, st.integers(1, 50))
def test_residuals_nonnegative(a, t, n):
    assert all(r >= 0 for r in roundtrip(a, t, n, 1e-6).residuals)
