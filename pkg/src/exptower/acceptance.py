"""Exit criteria, shared by ``exptower selftest`` and tests/test_acceptance.py.

Each criterion returns ``(passed, detail)``; tolerances are fixed here.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .analysis import (
    GridSpec,
    QuadPhi,
    atlas_build,
    atlas_membership,
    certify_pow,
    certify_quad,
    constants_AB,
    contraction_check,
    plus_fixed_points,
    quad_a,
    scan_quad_extended,
)
from .evaluator import (
    Interval,
    TowerStatus,
    classify,
    image_interval,
    limit_interval,
    truncation_value,
)
from .representer import Verdict, eventually_decreasing, expand, roundtrip
from .words import InfiniteWord, first_difference, parse_word
from .xreal import INF, MINUS, NINF, PLUS, apply_sign

DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    check: Callable[[random.Random], tuple[bool, str]]


@dataclass(frozen=True)
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.number:2d}] {self.name}: {self.detail}"


def random_periodic_word(rng: random.Random, max_prefix: int = 6, max_cycle: int = 4) -> InfiniteWord:
    signs = (PLUS, MINUS)
    prefix = tuple(rng.choice(signs) for _ in range(rng.randint(0, max_prefix)))
    cycle = tuple(rng.choice(signs) for _ in range(rng.randint(1, max_cycle)))
    return InfiniteWord(prefix, cycle)


def random_base(rng: random.Random, regime: int) -> float:
    """Regime 0: (0, 1/e], 1: (1/e, e], 2: (e, 6]."""
    lo, hi = ((0.05, 1 / math.e), (1 / math.e, math.e), (math.e, 6.0))[regime]
    return rng.uniform(lo, hi)


def c01_constants(rng):
    c = constants_AB()
    ok = abs(c.A - 0.3942) <= 5e-5 and abs(c.B - 2.5367) <= 5e-5 and abs(c.product - 1) <= 1e-9
    return ok, f"A={c.A:.10f} B={c.B:.10f} |AB-1|={abs(c.product - 1):.2e}"


def c02_quad_range(rng):
    hi = quad_a(-math.sqrt(3))
    lo = quad_a(math.sqrt(3))
    ok = abs(hi - 1.51) <= 5e-3 and abs(lo - 0.66) <= 5e-3
    return ok, f"(2-sqrt3)e^sqrt3={hi:.6f} (2+sqrt3)e^-sqrt3={lo:.6f}"


def c03_extended_scan(rng):
    scan = scan_quad_extended()
    return abs(scan.a_low - 0.577) <= 5e-3, f"t*={scan.t_star:.10f} a_low={scan.a_low:.10f}"


def c04_simple_certificate(rng):
    cert = certify_quad(1.0, GridSpec(-40.0, 40.0, 100_000), lam=1.0)
    return cert.grid_min >= 1 - 1e-12, f"min F on grid = {cert.grid_min!r}"


def c05_suitable_roundtrip(rng):
    targets = [0.0, INF, NINF, 1.0, -1.0, math.e, -math.pi, 0.5]
    worst = 0.0
    bad = []
    for t in targets:
        rt = roundtrip(1.0, t, 200, 1e-6)
        worst = max(worst, rt.final_residual)
        if not (rt.final_residual < 1e-6 and eventually_decreasing(rt.residuals)
                and rt.verdict is Verdict.REPRESENTED):
            bad.append(t)
    return not bad, f"worst final residual {worst:.3e}; failing targets {bad}"


def c06_small_base_failure(rng):
    a = 0.3
    exp_ = expand(a, 1.0, 200)
    report = classify(a, exp_.word)
    m = plus_fixed_points(a).m
    oracle = math.exp(a * math.exp(a * -math.exp(a * m)))  # f_+ f_+ f_- (m)
    limit = report.limit if report.limit is not None else math.nan
    member = atlas_membership(atlas_build(a, 1), 1.0)
    ok = (str(exp_.word) == "++-(+)" and abs(limit - oracle) < 1e-6
          and abs(limit - 1.0) > 0.1 and member.in_x and str(member.witness) == "+")
    return ok, (f"word={exp_.word} limit={limit:.10f} oracle={oracle:.10f} "
                f"InX={member.in_x} witness={member.witness}")


def c07_small_base_convergence(rng):
    failures = []
    for _ in range(100):
        w = random_periodic_word(rng)
        rep = classify(0.3, w, max_steps=10_000)
        if not rep.status.converged:
            failures.append(str(w))
    return not failures, f"100 words, non-converged: {failures}"


def c08_large_base_divergence(rng):
    a = 3.0
    w = parse_word("(-)")
    rep = classify(a, w)
    if rep.status is not TowerStatus.TWO_CYCLE:
        return False, f"status {rep.status.value}"
    p, q = rep.cycle
    res = max(abs(apply_sign(MINUS, a, p) - q), abs(apply_sign(MINUS, a, q) - p))
    box = limit_interval(a, w, 4000)
    match = max(abs(box.lo - p), abs(box.hi - q))
    signs = expand(a, (p + q) / 2, 100).signs
    lead = next((i for i, s in enumerate(signs) if s is not MINUS), len(signs))
    ok = res < 1e-10 and match < 1e-8 and lead >= 60
    return ok, f"cycle=({p:.12f}, {q:.12f}) residual={res:.2e} vs limit interval {match:.2e} leading minus={lead}"


def c09_disjoint_interiors(rng):
    checked = 0
    bad = 0
    while checked < 500:
        a = random_base(rng, rng.randrange(3))
        w1, w2 = random_periodic_word(rng), random_periodic_word(rng)
        n0 = first_difference(w1, w2)
        if n0 is None or n0 > 30:
            continue
        checked += 1
        s1, s2 = w1.head(30), w2.head(30)
        for n in range(n0, 31):
            if not image_interval(a, s1[:n]).interior_disjoint(image_interval(a, s2[:n])):
                bad += 1
                break
    return bad == 0, f"{checked} pairs, {bad} with overlapping interiors"


def c10_nesting_membership(rng):
    bad = 0
    for i in range(500):
        a = random_base(rng, i % 3)
        w = random_periodic_word(rng)
        signs = w.head(51)
        prev = image_interval(a, ())
        for n in range(1, 51):
            cur = image_interval(a, signs[:n])
            u = truncation_value(a, w, n)
            if not (prev.contains_interval(cur) and cur.lo <= u <= cur.hi):
                bad += 1
                break
            prev = cur
    return bad == 0, f"500 (a, word) pairs, {bad} violations"


def c11_measure_contraction(rng):
    phi = QuadPhi(1.0)
    bad = 0
    asym = 0
    for _ in range(1000):
        x, y = sorted((rng.uniform(-10, 10), rng.uniform(-10, 10)))
        chk = contraction_check(1.0, phi, Interval(x, y))
        if x < y and not chk.contracted:
            bad += 1
        if chk.m_after_plus != chk.m_after_minus:
            asym += 1
    return bad == 0 and asym == 0, f"1000 intervals, {bad} not contracted, {asym} asymmetric"


def c12_pow_boundary(rng):
    want = {0.40: True, 1.0: True, 2.0: True, 2.53: True, 0.39: False, 2.54: False}
    got = {a: certify_pow(a).verdict for a in want}
    return got == want, ", ".join(f"{a}:{got[a]}" for a in want)


CRITERIA = [
    Criterion(1, "constants A, B", c01_constants),
    Criterion(2, "quadratic-family range endpoints", c02_quad_range),
    Criterion(3, "extended quadratic scan", c03_extended_scan),
    Criterion(4, "simple certificate a=1, lambda=1", c04_simple_certificate),
    Criterion(5, "suitable round trip at a=1", c05_suitable_roundtrip),
    Criterion(6, "small-base failure at a=0.3, t=1", c06_small_base_failure),
    Criterion(7, "small-base convergence at a=0.3", c07_small_base_convergence),
    Criterion(8, "large-base divergence at a=3", c08_large_base_divergence),
    Criterion(9, "disjoint interiors", c09_disjoint_interiors),
    Criterion(10, "nesting and membership", c10_nesting_membership),
    Criterion(11, "measure contraction", c11_measure_contraction),
    Criterion(12, "power certificate boundary", c12_pow_boundary),
]


def run_criterion(c: Criterion, seed: int = DEFAULT_SEED) -> Outcome:
    rng = random.Random(seed * 100 + c.number)
    passed, detail = c.check(rng)
    return Outcome(c.number, c.name, bool(passed), detail)


def run_all(seed: int = DEFAULT_SEED) -> list[Outcome]:
    return [run_criterion(c, seed) for c in CRITERIA]
