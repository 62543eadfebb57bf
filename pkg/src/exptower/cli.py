"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 negative verdict.
JSON reports have the shape {command, config, result, diagnostics}; every
real-valued result carries the tolerance it was computed to, either as
{"value", "tol"} or as a sibling "tol" next to a sequence.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .acceptance import DEFAULT_SEED, run_all
from .analysis import (
    GridSpec,
    PowPhi,
    QuadPhi,
    atlas_build,
    atlas_membership,
    certify_pow,
    certify_quad,
    constants_AB,
    contraction_check,
    max_gap,
    minus_fixed_point,
    phi_measure,
    plus_fixed_points,
    scan_quad_extended,
    suitability_report,
    two_cycle,
)
from .analysis.suitability import Suitability
from .errors import DomainError, ExpTowerError, OutOfRange, ParseError
from .evaluator import (
    DEFAULT_TOL,
    Interval,
    classify,
    default_max_steps,
    interval_sequence,
)
from .representer import Verdict, alternate_expansion, expand, roundtrip
from .words import GRAMMAR, FiniteWord, InfiniteWord, parse_word
from .xreal import format_xreal, parse_xreal

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NEGATIVE = 0, 2, 3, 4
# Directly evaluated quantities are exact up to binary64 rounding.
EVAL_TOL = sys.float_info.epsilon
SOLVER_TOL = 1e-12


def num(x: float) -> Any:
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    return x


def val(x: float | None, tol: float) -> Any:
    return None if x is None else {"value": num(x), "tol": tol}


def interval_json(iv: Interval) -> dict:
    return {"lo": num(iv.lo), "hi": num(iv.hi)}


@dataclass
class Report:
    command: str
    config: dict
    result: dict
    rows: list[dict] | None = None  # sequence data for csv
    diagnostics: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def document(self) -> dict:
        diag = {"version": __version__, **self.diagnostics}
        return {"command": self.command, "config": self.config,
                "result": self.result, "diagnostics": diag}


# argparse value types: flags are validated before anything is computed.

def base_type(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (a > 0 and math.isfinite(a)):
        raise argparse.ArgumentTypeError("base must be a positive finite real")
    return a


def positive_type(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive finite real")
    return v


def xreal_type(text: str) -> float:
    try:
        return parse_xreal(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def word_type(text: str):
    try:
        return parse_word(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def count_type(minimum: int):
    def conv(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if n < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return n
    return conv


# --- commands -------------------------------------------------------------

def cmd_eval(args) -> Report:
    steps = args.steps if args.steps is not None else default_max_steps()
    rep = classify(args.base, args.word, steps, args.tol, keep_trace=True)
    result = {
        "status": rep.status.value,
        "limit": val(rep.limit, args.tol),
        "cycle": None if rep.cycle is None else
        {"p": val(rep.cycle[0], args.tol), "q": val(rep.cycle[1], args.tol)},
        "steps_used": rep.steps_used,
    }
    rows = [{"n": n, "u_n": num(u)} for n, u in enumerate(rep.trace, 1)]
    if args.intervals:
        word = args.word
        count = args.intervals if isinstance(word, InfiniteWord) else min(args.intervals, len(word))
        seq = interval_sequence(args.base, word, count)
        result["intervals"] = {"values": [interval_json(iv) for iv in seq], "tol": EVAL_TOL}
        for row, iv in zip(rows, seq):
            row["x_n"], row["y_n"] = num(iv.lo), num(iv.hi)
    if args.trace:
        result["trace"] = {"values": [num(u) for u in rep.trace], "tol": EVAL_TOL}
    code = EXIT_OK if rep.status.converged else EXIT_NEGATIVE
    return Report("eval", {}, result, rows, exit_code=code)


def _expansion_json(e) -> dict:
    return {
        "word": str(e.word),
        "signs": "".join(s.value for s in e.signs),
        "tail_periodic": e.tail_periodic,
        "hit_zero_at": e.hit_zero_at,
        "orbit": {"values": [num(u) for u in e.orbit], "tol": EVAL_TOL},
    }


def cmd_expand(args) -> Report:
    e = expand(args.base, args.target, args.signs)
    result = {"expansion": _expansion_json(e)}
    if args.alternate:
        alt = alternate_expansion(args.base, args.target, args.signs)
        result["alternate"] = None if alt is None else _expansion_json(alt)
    rows = [{"k": k, "u_k": num(u), "sign": e.signs[k].value if k < len(e.signs) else ""}
            for k, u in enumerate(e.orbit)]
    return Report("expand", {}, result, rows)


def cmd_roundtrip(args) -> Report:
    rt = roundtrip(args.base, args.target, args.signs, args.tol)
    result = {
        "word": str(rt.expansion.word),
        "verdict": rt.verdict.value,
        "final_residual": val(rt.final_residual, EVAL_TOL),
        "residuals": {"values": [num(r) for r in rt.residuals], "tol": EVAL_TOL},
    }
    rows = [{"n": n, "u_n": num(u), "residual": num(r)}
            for n, (u, r) in enumerate(zip(rt.values, rt.residuals), 1)]
    code = EXIT_OK if rt.verdict is Verdict.REPRESENTED else EXIT_NEGATIVE
    return Report("roundtrip", {}, result, rows, exit_code=code)


def cmd_fixed_points(args) -> Report:
    a = args.base
    mf = minus_fixed_point(a)
    result: dict = {
        "minus": {"m_minus": val(mf.m_minus, SOLVER_TOL), "repulsive": mf.repulsive},
        "plus": None,
    }
    diag = {}
    try:
        pf = plus_fixed_points(a)
        result["plus"] = {"m": val(pf.m, SOLVER_TOL), "M": val(pf.M, SOLVER_TOL)}
    except OutOfRange as exc:
        diag["plus"] = str(exc)
    return Report("fixed-points", {}, result, diagnostics=diag)


def cmd_cycle(args) -> Report:
    tc = two_cycle(args.base, args.tol)
    r1, r2 = tc.residuals
    result = {
        "p": val(tc.p, args.tol), "q": val(tc.q, args.tol),
        "m_minus": val(tc.m_minus, SOLVER_TOL),
        "residuals": [val(r1, EVAL_TOL), val(r2, EVAL_TOL)],
        "iterations": tc.iterations,
    }
    return Report("cycle", {}, result)


def cmd_constants(args) -> Report:
    c = constants_AB(args.tol)
    result = {
        "A": val(c.A, args.tol), "B": val(c.B, args.tol),
        "product": val(c.product, 1e-9),
        "residual_A": val(c.residual_A, EVAL_TOL), "residual_B": val(c.residual_B, EVAL_TOL),
    }
    return Report("constants", {}, result)


def cmd_certify(args) -> Report:
    result: dict = {}
    verdicts = []
    if args.family in ("quad", "both"):
        grid = GridSpec(args.grid_lo, args.grid_hi, args.grid_points)
        q = certify_quad(args.base, grid, args.lam)
        result["quad"] = {
            "t_param": val(q.t_param, SOLVER_TOL), "lambda": val(q.lam, SOLVER_TOL),
            "lambda_overridden": q.lam_overridden,
            "convex_ok": q.convex_ok, "grid_min": val(q.grid_min, EVAL_TOL),
            "grid_argmin": val(q.grid_argmin, EVAL_TOL),
            "grid_ok": q.grid_ok, "tails_ok": q.tails_ok, "verdict": q.verdict,
        }
        verdicts.append(q.verdict)
    if args.family in ("pow", "both"):
        p = certify_pow(args.base)
        result["pow"] = {
            "nu": val(p.nu, EVAL_TOL), "nu_prime": val(p.nu_prime, EVAL_TOL),
            "cond1_value": val(p.cond1_value, EVAL_TOL), "cond2_value": val(p.cond2_value, EVAL_TOL),
            "cond1": p.cond1, "cond2": p.cond2, "verdict": p.verdict,
        }
        verdicts.append(p.verdict)
    if args.scan:
        s = scan_quad_extended()
        result["extended_scan"] = {"t_star": val(s.t_star, SOLVER_TOL),
                                   "a_low": val(s.a_low, SOLVER_TOL),
                                   "endpoint_included": "not settled"}
    ok = any(verdicts)
    result["verdict"] = ok
    return Report("certify", {}, result, exit_code=EXIT_OK if ok else EXIT_NEGATIVE)


def cmd_measure(args) -> Report:
    if args.family == "quad":
        if args.lam is None:
            raise UsageError("--family quad needs --lambda")
        fam = QuadPhi(args.lam)
    else:
        if args.base is None:
            raise UsageError("--family pow needs --base")
        fam = PowPhi(args.base, args.nu if args.nu is not None else 1 + 1 / args.base)
    if args.lo > args.hi:
        raise UsageError("--lo must not exceed --hi")
    iv = Interval(args.lo, args.hi)
    result: dict = {"measure": val(phi_measure(fam, iv), EVAL_TOL)}
    code = EXIT_OK
    if args.contraction:
        if args.base is None:
            raise UsageError("--contraction needs --base")
        chk = contraction_check(args.base, fam, iv)
        result["contraction"] = {
            "m_before": val(chk.m_before, EVAL_TOL),
            "m_after_plus": val(chk.m_after_plus, EVAL_TOL),
            "m_after_minus": val(chk.m_after_minus, EVAL_TOL),
            "contracted": chk.contracted,
        }
        code = EXIT_OK if chk.contracted else EXIT_NEGATIVE
    return Report("measure", {}, result, exit_code=code)


def cmd_atlas(args) -> Report:
    atlas = atlas_build(args.base, args.depth)
    result: dict = {
        "m": val(atlas.m, SOLVER_TOL),
        "components": {"values": [interval_json(c) for c in atlas.components], "tol": EVAL_TOL},
        "component_count": len(atlas.components),
        "max_gap_in_core": val(max_gap(atlas), EVAL_TOL),
    }
    rows = [{"lo": num(c.lo), "hi": num(c.hi)} for c in atlas.components]
    if args.target is not None:
        mem = atlas_membership(atlas, args.target)
        result["membership"] = {

            "status": "InX" if mem.in_x else "NotInXAtDepth",
            "witness": None if mem.witness is None else str(mem.witness),
            "kind": mem.kind,
            "component": None if mem.component is None else interval_json(mem.component),
        }
    return Report("atlas", {}, result, rows)


def cmd_suitability(args) -> Report:
    rep = suitability_report(args.base)
    result = {"verdict": rep.verdict.value, "reason": rep.reason}
    if rep.quad is not None:
        result["quad_verdict"] = rep.quad.verdict
        result["pow_verdict"] = rep.pow.verdict
    code = EXIT_OK if rep.verdict is Suitability.SUITABLE_CERTIFIED else EXIT_NEGATIVE
    return Report("suitability", {}, result, exit_code=code)


def cmd_selftest(args) -> Report:
    outcomes = run_all(args.seed)
    result = {
        "criteria": [{"number": o.number, "name": o.name, "passed": o.passed, "detail": o.detail}
                     for o in outcomes],
        "all_passed": all(o.passed for o in outcomes),
    }
    rows = [{"number": o.number, "name": o.name, "passed": o.passed, "detail": o.detail}
            for o in outcomes]
    rep = Report("selftest", {}, result, rows,
                 exit_code=EXIT_OK if result["all_passed"] else EXIT_NEGATIVE)
    rep.diagnostics["lines"] = [o.line() for o in outcomes]
    return rep


class UsageError(Exception):
    pass


COMMANDS = {
    "eval": cmd_eval, "expand": cmd_expand, "roundtrip": cmd_roundtrip,
    "fixed-points": cmd_fixed_points, "cycle": cmd_cycle, "constants": cmd_constants,
    "certify": cmd_certify, "measure": cmd_measure, "atlas": cmd_atlas,
    "suitability": cmd_suitability, "selftest": cmd_selftest,
}
SEQUENCE_COMMANDS = {"eval", "expand", "roundtrip", "atlas", "selftest"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(
        prog="exptower", description="Infinite towers of signed exponentials e^{a x}.",
        epilog=f"word grammar: {GRAMMAR}")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, epilog=f"word grammar: {GRAMMAR}")

    p = add("eval", "classify the truncation sequence of a word")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--word", type=word_type, required=True)
    p.add_argument("--steps", type=count_type(4), help="iteration cap (env EXPTOWER_MAX_STEPS)")
    p.add_argument("--tol", type=positive_type, default=DEFAULT_TOL)
    p.add_argument("--trace", action="store_true", help="include u_n in the json result")
    p.add_argument("--intervals", type=count_type(1), metavar="N", help="also report I(1..N)")

    p = add("expand", "greedy sign expansion of a target")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--target", type=xreal_type, required=True)
    p.add_argument("--signs", type=count_type(1), default=50)
    p.add_argument("--alternate", action="store_true")

    p = add("roundtrip", "expand a target and re-evaluate the expansion")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--target", type=xreal_type, required=True)
    p.add_argument("--signs", type=count_type(1), default=200)
    p.add_argument("--tol", type=positive_type, default=1e-6)

    p = add("fixed-points", "fixed points of f_+ (a <= 1/e) and of f_-")
    p.add_argument("--base", type=base_type, required=True)

    p = add("cycle", "two-cycle of f_- for a > e")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--tol", type=positive_type, default=DEFAULT_TOL)

    p = add("constants", "the constants A and B")
    p.add_argument("--tol", type=positive_type, default=SOLVER_TOL)

    p = add("certify", "contraction certificates at a base")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--family", choices=["quad", "pow", "both"], default="both")
    p.add_argument("--lambda", dest="lam", type=positive_type, help="override lambda (quad)")
    p.add_argument("--grid-lo", type=float, default=-40.0)
    p.add_argument("--grid-hi", type=float, default=40.0)
    p.add_argument("--grid-points", type=count_type(2), default=100_000)
    p.add_argument("--scan", action="store_true", help="include the extended quadratic scan")

    p = add("measure", "phi-measure of an interval")
    p.add_argument("--family", choices=["quad", "pow"], required=True)
    p.add_argument("--lambda", dest="lam", type=positive_type)
    p.add_argument("--base", type=base_type)
    p.add_argument("--nu", type=float)
    p.add_argument("--lo", type=xreal_type, required=True)
    p.add_argument("--hi", type=xreal_type, required=True)
    p.add_argument("--contraction", action="store_true", help="also measure f_+(I) and f_-(I)")

    p = add("atlas", "depth-bounded atlas of the non-representable set (a <= 1/e)")
    p.add_argument("--base", type=base_type, required=True)
    p.add_argument("--depth", type=count_type(0), required=True)
    p.add_argument("--target", type=xreal_type)

    p = add("suitability", "regime and certificate verdict for a base")
    p.add_argument("--base", type=base_type, required=True)

    add("selftest", "run the acceptance criteria")
    return parser


def _config(args) -> dict:
    skip = {"command", "format", "out"}
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, (FiniteWord, InfiniteWord)):
            value = str(value)
        elif isinstance(value, float):
            value = num(value)
        cfg[key] = value
    cfg["format"] = args.format
    return cfg


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.document(), indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        rows = report.rows or []
        buf = io.StringIO()
        if rows:
            fields = list(rows[0])
            for r in rows[1:]:
                fields += [k for k in r if k not in fields]
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    lines = [f"command: {report.command}"]
    if report.command == "selftest":
        lines += report.diagnostics.get("lines", [])
    else:
        lines += [f"{k}: {_text(v)}" for k, v in report.result.items()]
    return "\n".join(lines) + "\n"


def _text(v) -> str:
    if isinstance(v, dict) and set(v) == {"value", "tol"}:
        return f"{format_xreal(v['value']) if isinstance(v['value'], float) else v['value']} (tol {v['tol']:g})"
    if isinstance(v, dict) and "values" in v:
        return f"[{len(v['values'])} values]"
    return json.dumps(v, allow_nan=False)


# Flags whose values may legitimately start with '-' (words, -inf, -e, ...).
SIGNED_VALUE_FLAGS = {"--word", "--target", "--lo", "--hi", "--nu", "--grid-lo", "--grid-hi"}


def _glue_signed_values(argv: list[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in SIGNED_VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(_glue_signed_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "csv" and args.command not in SEQUENCE_COMMANDS:
        stderr.write(f"exptower {args.command}: error: --format csv is only available for "
                     f"sequence reports ({', '.join(sorted(SEQUENCE_COMMANDS))})\n")
        return EXIT_USAGE
    config = _config(args)
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"exptower {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except ExpTowerError as exc:
        stderr.write(f"exptower {args.command}: error: {exc}\n")
        report = Report(args.command, config, {}, diagnostics={"error": str(exc),
                                                               "error_type": type(exc).__name__},
                        exit_code=EXIT_DOMAIN)
        if args.format == "json":
            _emit(render(report, "json"), args.out, stdout)
        return EXIT_DOMAIN
    report.config = config
    _emit(render(report, args.format), args.out, stdout)
    return report.exit_code


def _emit(text: str, out: str | None, stdout) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
