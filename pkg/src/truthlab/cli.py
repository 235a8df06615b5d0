"""Command-line entry point.

Exit codes: 0 success or true, 1 false or violations, 2 usage or parse error,
3 invariant failure. Every subcommand prints a human-readable trace on stdout;
``--json FILE`` also writes a machine-readable report (``-`` sends it to
stdout and moves the trace to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable
from pathlib import Path

from ._node import dag_size
from .coding import DecodeError, decode_formula, decode_term, encode_formula, encode_term
from .evaluation import (
    BoundedOracle, ConstantOracle, Delta0Error, EvalConfig, MissingOracleError, eval_bounded,
    eval_delta0, prprop_attachment,
)
from .grammar import ParseError, parse_formula, parse_term, pretty_print
from .overspill import (
    NotFound, ResourceLimitError, StoppingSpec, build_gamma_sequence,
    check_psi_sequence, distinctness_sentence, find_max_rank_index, outer_disjunction_D,
    rank, stopping_disjunction,
)
from .pipelines import demo_theorem31, demo_theorem33
from .prop import countermodel, proves_prop
from .truthclass import CHECKS, ManifestError, load_manifest, run_checks

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Output:
    """Collects the human trace and the JSON report of one run."""

    def __init__(self, json_path: str | None):
        self.json_path = json_path
        self.stream = sys.stderr if json_path == "-" else sys.stdout
        self.data: dict = {}

    def say(self, *lines: str) -> None:
        for line in lines:
            print(line, file=self.stream)

    def finish(self, code: int) -> int:
        if self.json_path is not None:
            self.data["exit_code"] = code
            text = json.dumps(self.data, indent=2, sort_keys=True) + "\n"
            if self.json_path == "-":
                sys.stdout.write(text)
            else:
                Path(self.json_path).write_text(text)
        return code


def read_formulas(path: str) -> list:
    """One formula per line (blank lines and # comments skipped), or a JSON array of strings."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON: {exc}") from None
        if not all(isinstance(s, str) for s in items):
            raise UsageError(f"{path}: expected a JSON array of formula strings")
    else:
        items = [ln.strip() for ln in text.splitlines()]
        items = [ln for ln in items if ln and not ln.startswith("#")]
    out = []
    for n, s in enumerate(items, 1):
        try:
            out.append(parse_formula(s))
        except ParseError as exc:
            raise UsageError(f"{path}: formula {n}: {exc}") from None
    if not out:
        raise UsageError(f"{path}: no formulas")
    return out


def _sentence(text: str):
    phi = parse_formula(text)
    if phi.free_vars:
        raise UsageError(f"not a sentence: free variables {', '.join(f'v{i}' for i in sorted(phi.free_vars))}")
    return phi


def _oracle(spec: str):
    match spec.split(":", 1):
        case ["true"]:
            return ConstantOracle(True)
        case ["false"]:
            return ConstantOracle(False)
        case ["bounded", b] if b.isdigit() and int(b) >= 1:
            return BoundedOracle(int(b))
    raise UsageError(f"unknown oracle {spec!r}; use bounded:B, true or false")


def _tf(b: bool) -> str:
    return "true" if b else "false"


# subcommands

def cmd_parse(args, out: Output) -> int:
    phi = parse_formula(args.formula)
    text = pretty_print(phi)
    out.say(text)
    out.data.update(formula=text, sentence=phi.is_sentence,
                    free_vars=sorted(phi.free_vars), dag_size=dag_size(phi))
    return EXIT_OK


def cmd_code(args, out: Output) -> int:
    node = parse_term(args.formula) if args.term else parse_formula(args.formula)
    code = encode_term(node) if args.term else encode_formula(node)
    shown = hex(code) if args.hex else str(code)
    out.say(shown)
    out.data.update(code=str(code), hex=hex(code))
    return EXIT_OK


def cmd_decode(args, out: Output) -> int:
    try:
        code = int(args.code, 0)
    except ValueError:
        raise UsageError(f"not an integer: {args.code!r}") from None
    node = decode_term(code) if args.term else decode_formula(code)
    text = pretty_print(node)
    out.say(text)
    out.data.update(formula=text)
    return EXIT_OK


def cmd_eval(args, out: Output) -> int:
    phi = _sentence(args.formula)
    if args.delta0:
        value = eval_delta0(phi, prprop_attachment())
    else:
        if args.bound is None:
            raise UsageError("eval needs --bound B or --delta0")
        value = eval_bounded(phi, EvalConfig.with_prprop(args.bound))
    out.say(_tf(value))
    out.data.update(value=value, mode="delta0" if args.delta0 else f"bounded:{args.bound}")
    return EXIT_OK if value else EXIT_FALSE


def _report_countermodel(out: Output, cm) -> None:
    out.data["countermodel"] = [{"atom": pretty_print(a), "value": v} for a, v in cm.items()]
    out.say("countermodel:", *(f"  {pretty_print(a)} := {_tf(v)}" for a, v in cm.items()))


def cmd_taut(args, out: Output) -> int:
    phi = parse_formula(args.formula)
    cm = countermodel(phi)
    out.say(_tf(cm is None))
    out.data["tautology"] = cm is None
    if cm is not None:
        _report_countermodel(out, cm)
    return EXIT_OK if cm is None else EXIT_FALSE


def cmd_entails(args, out: Output) -> int:
    premises = read_formulas(args.premises)
    phi = parse_formula(args.formula)
    value = proves_prop(premises, phi)
    out.say(_tf(value))
    out.data.update(entails=value, premises=len(premises))
    return EXIT_OK if value else EXIT_FALSE


def cmd_stopping(args, out: Output) -> int:
    alphas, betas = read_formulas(args.alphas), read_formulas(args.betas)
    if len(alphas) != len(betas):
        raise UsageError(f"{len(alphas)} alphas but {len(betas)} betas")
    spec = StoppingSpec(alphas, betas, len(alphas) - 1)
    phi = stopping_disjunction(spec)
    out.say(pretty_print(phi), f"dag size: {dag_size(phi)}")
    out.data.update(formula=pretty_print(phi), dag_size=dag_size(phi))
    if args.bound is None:
        return EXIT_OK
    oracle = BoundedOracle(args.bound)
    k = next((i for i, a in enumerate(alphas) if oracle(a)), None)
    expected = False if k is None else oracle(betas[k])
    value = oracle(phi)
    out.say(f"least true alpha: {'none' if k is None else k}", f"value: {_tf(value)}")
    out.data.update(least_alpha=k, value=value, contract=value == expected)
    if value != expected:
        out.say("FAILED: value differs from beta at the least true alpha")
        return EXIT_INVARIANT
    return EXIT_OK if value else EXIT_FALSE


def cmd_gamma(args, out: Output) -> int:
    phis = read_formulas(args.phis)
    oracle = _oracle(args.oracle)
    gammas = build_gamma_sequence(phis, args.c, args.steps)
    ranks = [rank(g, phis[: args.c + 1], oracle) for g in gammas]
    rows = []
    for i, (g, r) in enumerate(zip(gammas, ranks)):
        out.say(f"gamma_{i}: dag={dag_size(g)} rank={r}")
        rows.append({"index": i, "dag_size": dag_size(g), "rank": str(r)})
    d = find_max_rank_index(ranks)
    if isinstance(d, NotFound):
        where = "" if d.index is None else f" at {d.index}"
        out.say(f"omega index: not found ({d.reason}{where})")
    else:
        out.say(f"omega index: {d}")
    out.data.update(gammas=rows, omega_index=d if isinstance(d, int) else None,
                    not_found=None if isinstance(d, int) else {"reason": d.reason, "index": d.index})
    return EXIT_OK if isinstance(d, int) else EXIT_FALSE


def cmd_outer_d(args, out: Output) -> int:
    phis = read_formulas(args.phis)
    d = outer_disjunction_D(phis)
    out.say(pretty_print(d), f"dag size: {dag_size(d)}")
    out.data.update(formula=pretty_print(d), dag_size=dag_size(d))
    if args.bound is None:
        return EXIT_OK
    value = BoundedOracle(args.bound)(d)
    out.say(f"value: {_tf(value)}")
    out.data["value"] = value
    return EXIT_OK if value else EXIT_FALSE


def cmd_psi_seq(args, out: Output) -> int:
    phis = read_formulas(args.phis)
    report = check_psi_sequence(phis, _oracle(args.oracle))
    out.say(*report.lines())
    out.data.update(
        steps=[{"i": s.index, "phi": s.phi, "psi": s.psi, "outer": s.outer} for s in report.steps],
        hypotheses_hold=report.hypotheses_hold, violated_hypothesis=report.violated_hypothesis,
        failing_step=report.failing_step, conclusion_holds=report.conclusion_holds)
    if not report.ok:
        return EXIT_INVARIANT
    return EXIT_OK if report.hypotheses_hold else EXIT_FALSE


def cmd_distinct(args, out: Output) -> int:
    phi = distinctness_sentence(args.c)
    out.say(pretty_print(phi))
    out.data["formula"] = pretty_print(phi)
    if args.bound is None:
        return EXIT_OK
    value = BoundedOracle(args.bound)(phi)
    out.say(f"value: {_tf(value)}")
    out.data["value"] = value
    return EXIT_OK if value else EXIT_FALSE


def cmd_check(args, out: Output) -> int:
    s = load_manifest(args.manifest)
    names = [n.strip() for n in args.checks.split(",") if n.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown or not names:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    reports = run_checks(s, names)
    violations = inapplicable = 0
    for name, rep in reports.items():
        violations += len(rep.violations)
        inapplicable += len(rep.inapplicable)
        out.say(f"{name}: {len(rep.violations)} violation(s), {len(rep.inapplicable)} inapplicable, "
                f"{len(rep.ambiguous)} ambiguous")
        for v in rep.violations:
            witness = ", ".join(f"{pretty_print(f)} -> {_tf(b)}" for f, b in v.witness)
            note = f" ({v.note})" if v.note else ""
            out.say(f"  {v.clause}: {witness}{note}")
    out.data.update(entries=len(s), numeral_bound=s.numeral_bound, strict=args.strict,
                    reports={n: r.to_json() for n, r in reports.items()})
    if inapplicable:
        level = "error" if args.strict else "warning"
        out.say(f"{level}: {inapplicable} clause(s) reach outside the set")
    return EXIT_FALSE if violations or (args.strict and inapplicable) else EXIT_OK


def cmd_demo_t31(args, out: Output) -> int:
    phis = read_formulas(args.phis) if args.phis else None
    report = demo_theorem31(args.c, args.bound, phis)
    out.say(*report.lines())
    out.data.update(report.to_json())
    return report.exit_code


def cmd_demo_t33(args, out: Output) -> int:
    report = demo_theorem33(args.c, args.bound, break_at=args.break_at)
    out.say(*report.lines())
    out.data.update(report.to_json())
    return report.exit_code


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return n


def _positive(text: str) -> int:
    n = _natural(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="FILE", help="also write a JSON report (- for stdout)")
    parser = argparse.ArgumentParser(prog="truthlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse, "parse and pretty-print a formula")
    p.add_argument("formula")
    p = add("code", cmd_code, "Goedel code of a formula or term")
    p.add_argument("formula")
    p.add_argument("--hex", action="store_true", help="print the code in hexadecimal")
    p.add_argument("--term", action="store_true", help="read the input as a term")
    p = add("decode", cmd_decode, "formula or term with a given code")
    p.add_argument("code", help="decimal, or hexadecimal with 0x")
    p.add_argument("--term", action="store_true", help="decode a term code")
    p = add("eval", cmd_eval, "truth value of a sentence")
    p.add_argument("formula")
    p.add_argument("--bound", type=_positive, help="quantifiers range over 0..B")
    p.add_argument("--delta0", action="store_true", help="exact truth for bounded quantifiers only")
    p = add("taut", cmd_taut, "is the sentence a propositional tautology")
    p.add_argument("formula")
    p = add("entails", cmd_entails, "propositional entailment from a premise file")
    p.add_argument("formula")
    p.add_argument("--premises", required=True, metavar="FILE")
    p = add("stopping", cmd_stopping, "disjunction with stopping conditions")
    p.add_argument("--alphas", required=True, metavar="FILE")
    p.add_argument("--betas", required=True, metavar="FILE")
    p.add_argument("--bound", type=_positive, help="evaluate and check the least-alpha contract")
    p = add("gamma", cmd_gamma, "gamma sequence with DAG sizes and ranks")
    p.add_argument("--phis", required=True, metavar="FILE")
    p.add_argument("--c", type=_natural, required=True)
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--oracle", default="bounded:8", help="bounded:B, true or false (default bounded:8)")
    p = add("outer-d", cmd_outer_d, "outer disjunction of a sentence list")
    p.add_argument("--phis", required=True, metavar="FILE")
    p.add_argument("--bound", type=_positive, help="also evaluate it")
    p = add("psi-seq", cmd_psi_seq, "psi-sequence trace")
    p.add_argument("--phis", required=True, metavar="FILE")
    p.add_argument("--oracle", default="bounded:8", help="bounded:B, true or false (default bounded:8)")
    p = add("distinct", cmd_distinct, "sentence asserting c distinct elements")
    p.add_argument("--c", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, help="also evaluate it")
    p = add("check", cmd_check, "check a labeled sentence manifest")
    p.add_argument("--manifest", required=True, metavar="FILE")
    p.add_argument("--checks", default=",".join(CHECKS), help="comma-separated list of checks")
    p.add_argument("--strict", action="store_true", help="clauses reaching outside the set fail the run")
    p = add("demo-t31", cmd_demo_t31, "gamma construction end to end")
    p.add_argument("--c", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--phis", metavar="FILE", help="c+1 sentences instead of the distinctness family")
    p = add("demo-t33", cmd_demo_t33, "psi-sequence argument end to end")
    p.add_argument("--c", type=_natural, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--break-at", type=_natural, help="make phi_i false at this index")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        code = args.fn(args, out)
    except (UsageError, ParseError, DecodeError, ManifestError, Delta0Error,
            MissingOracleError, ValueError) as exc:
        print(f"truthlab {args.command}: {exc}", file=sys.stderr)
        out.data["error"] = str(exc)
        return out.finish(EXIT_USAGE)
    except ResourceLimitError as exc:
        print(f"truthlab {args.command}: {exc}", file=sys.stderr)
        out.data["error"] = str(exc)
        return out.finish(EXIT_INVARIANT)
    return out.finish(code)


if __name__ == "__main__":
    sys.exit(main())
