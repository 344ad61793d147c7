"""Command-line entry point: ``gkml <command> ...``.

Exit codes: 0 affirmative verdict, 1 negative verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from gkml.algebra import ONE, format_decimal, format_rational
from gkml.model import builtin_model, dumps_model, frame_properties, load_model
from gkml.proofs import check_proof, load_proof
from gkml.proofs.fuzz import soundness_fuzz
from gkml.search import (Countermodel, ExhaustedComplete, SearchBudgetExceeded, SearchConfig,
                         find_countermodel)
from gkml.semantics import (consequence_gk, consequence_leq, eval_trace, evaluate,
                            valid_in_model)
from gkml.syntax import Formula, parse, to_text

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Out:
    def __init__(self, unicode: bool, decimal: int | None = None):
        self.unicode = unicode
        self.decimal = decimal

    def f(self, formula: Formula) -> str:
        return to_text(formula, self.unicode)

    def v(self, value: Fraction) -> str:
        text = format_rational(value)
        if self.decimal is not None and value.denominator != 1:
            text += f" (~{format_decimal(value, self.decimal)})"
        return text


def load_theory(path: str | Path) -> list[Formula]:
    theory = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            theory.append(parse(line))
    return theory


# --------------------------------------------------------------------------
# commands

def cmd_eval(args, out: _Out) -> int:
    m, f = load_model(args.model), parse(args.formula)
    if args.trace:
        for line in eval_trace(m, args.world, f).render(unicode=out.unicode):
            print(line)
        return EXIT_YES
    print(f"e({args.world}, {out.f(f)}) = {out.v(evaluate(m, args.world, f))}")
    return EXIT_YES


def cmd_valid(args, out: _Out) -> int:
    m, f = load_model(args.model), parse(args.formula)
    verdict = valid_in_model(m, f)
    if verdict:
        print(f"valid: {out.f(f)} has value 1 at every world")
        return EXIT_YES
    print(f"not valid: e({verdict.world}, {out.f(f)}) = {out.v(verdict.value)}")
    return EXIT_NO


def cmd_conseq(args, out: _Out) -> int:
    m, f = load_model(args.model), parse(args.formula)
    theory = load_theory(args.theory)
    check = consequence_gk if args.mode == "gk" else consequence_leq
    holds = check(m, args.world, theory, f)
    premises = [evaluate(m, args.world, t) for t in theory]
    low = min(premises, default=ONE)
    print(f"premises: {len(theory)}, minimum value {out.v(low)}")
    print(f"conclusion: e({args.world}, {out.f(f)}) = {out.v(evaluate(m, args.world, f))}")
    print(f"consequence ({args.mode}) at {args.world}: {'holds' if holds else 'fails'}")
    return EXIT_YES if holds else EXIT_NO


def cmd_prove(args, out: _Out) -> int:
    doc = load_proof(args.proof)
    verdict = check_proof(doc.system, doc.assumptions, doc.proof)
    print(verdict.summary())
    if not verdict.accepted:
        return EXIT_NO
    if args.fuzz:
        report = soundness_fuzz(doc.system, doc.assumptions, doc.proof,
                                trials=args.fuzz, seed=args.seed)
        if not report.ok:
            print(f"soundness fuzz: {len(report.violations)} violation(s) in {args.fuzz} trials")
            print(f"  first: {report.violations[0]}")
            return EXIT_NO
        print(f"soundness fuzz: {args.fuzz} trials, no violations (seed {args.seed})")
    return EXIT_YES


def _grid(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be a positive integer or 'auto'") from None
    if value < 1:
        raise argparse.ArgumentTypeError("grid must be a positive integer or 'auto'")
    return value


def cmd_search(args, out: _Out) -> int:
    f = parse(args.formula)
    cfg = SearchConfig(max_worlds=args.max_worlds, grid_denominator=args.grid,
                       time_budget=args.budget, jobs=args.jobs)
    try:
        outcome = find_countermodel(f, cfg)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if isinstance(outcome, Countermodel):
        # the search count depends on --jobs, so it is left out to keep output stable
        witness = {"world": outcome.world, "formula": out.f(f),
                   "value": format_rational(outcome.value)}
        print(dumps_model(outcome.model, {"witness": witness}).rstrip("\n"))
        return EXIT_NO
    if isinstance(outcome, ExhaustedComplete):
        print(f"valid: no countermodel up to the world bound {outcome.bound} "
              f"({outcome.models_searched} order types searched)")
    else:
        print(f"no countermodel found within the search limits: {outcome.reason} "
              f"({outcome.models_searched} order types searched)")
    return EXIT_YES


def cmd_frames(args, out: _Out) -> int:
    for line in frame_properties(load_model(args.model)).lines():
        print(line)
    return EXIT_YES


# --------------------------------------------------------------------------
# demos

def _check(label: str, got: Fraction, want: Fraction, out: _Out) -> bool:
    ok = got == want
    print(f"  {label} = {out.v(got)}  [{'ok' if ok else f'expected {format_rational(want)}'}]")
    return ok


def demo_sec6(out: _Out) -> bool:
    m = builtin_model("sec6-crisp-fail")
    print("sec6: fuzzy countermodel to ~~<>p -> <>~~p")
    ok = _check("e(x, ~~<>p)", evaluate(m, "x", parse("~~<>p")), ONE, out)
    ok &= _check("e(x, <>~~p)", evaluate(m, "x", parse("<>~~p")), Fraction(1, 2), out)
    verdict = valid_in_model(m, parse("~~<>p -> <>~~p"))
    ok &= _check("scheme value", verdict.value, Fraction(1, 2), out)
    ok &= verdict.world == "x"
    return ok


def demo_sec5(out: _Out) -> bool:
    print("sec5: truncations of the model with e(n, p) = 1/(n+1)")
    ok = True
    previous = None
    for n in (2, 5, 10, 100):
        m = builtin_model("sec5-truncated", n)
        box = evaluate(m, "0", parse("[]p"))
        ok &= _check(f"N={n}: e(0, []p)", box, Fraction(1, n), out)
        ok &= _check(f"N={n}: e(0, []~~p)", evaluate(m, "0", parse("[]~~p")), ONE, out)
        if previous is not None:
            ok &= box < previous
        previous = box
    print("  values decrease toward 0, the value in the infinite model")
    return ok


def sec3_premises(n: int) -> list[Formula]:
    return [parse(f"(p{i + 1} -> p{i}) -> q") for i in range(1, n)]


def demo_sec3(out: _Out) -> bool:
    n = 5
    m = builtin_model("sec3-slice", n)
    theory = sec3_premises(n)
    q = parse("q")
    print(f"sec3: finite slice with n={n}")
    ok = True
    for t in theory:
        ok &= _check(f"e(w, {out.f(t)})", evaluate(m, "w", t), ONE, out)
    ok &= _check("e(w, q)", evaluate(m, "w", q), Fraction(1, 2), out)
    gk, leq = consequence_gk(m, "w", theory, q), consequence_leq(m, "w", theory, q)
    print(f"  T |= q (gk): {str(gk).lower()}")
    print(f"  T |= q (leq): {str(leq).lower()}")
    return ok and not gk and not leq


DEMOS = {"sec3": demo_sec3, "sec5": demo_sec5, "sec6": demo_sec6}


def cmd_demo(args, out: _Out) -> int:
    names = sorted(DEMOS) if args.name == "all" else [args.name]
    ok = True
    for name in names:
        ok &= DEMOS[name](out)
    print("all values match" if ok else "MISMATCH")
    return EXIT_YES if ok else EXIT_NO


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkml", description="Goedel modal logic toolkit")
    parser.add_argument("--unicode", action="store_true", help="print formulas with Unicode symbols")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula at a world")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--decimal", type=int, metavar="K")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("valid", help="check validity in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(run=cmd_valid)

    p = sub.add_parser("conseq", help="check a consequence at a world")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--theory", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--mode", choices=("gk", "leq"), default="gk")
    p.set_defaults(run=cmd_conseq)

    p = sub.add_parser("prove", help="check a proof file")
    p.add_argument("--proof", required=True)
    p.add_argument("--fuzz", type=int, default=0, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("search", help="search for a countermodel")
    p.add_argument("--formula", required=True)
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--grid", type=_grid, default="auto", metavar="D|auto")
    p.add_argument("--budget", type=float, default=60.0, metavar="SECS")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_search)

    p = sub.add_parser("frames", help="report frame properties of a model")
    p.add_argument("--model", required=True)
    p.set_defaults(run=cmd_frames)

    p = sub.add_parser("demo", help="replay the worked examples")
    p.add_argument("name", choices=("sec3", "sec5", "sec6", "all"))
    p.set_defaults(run=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.unicode, getattr(args, "decimal", None))
    try:
        return args.run(args, out)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
