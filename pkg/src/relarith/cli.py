"""Command-line interface.

Exit status: 0 success, 1 kernel rejection or verdict mismatch, 2 malformed
input, 3 producer refusal.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .axioms import AxiomError, AxiomRef, axiom_formula
from .kernel import KernelError, MalformedScript, check
from .parser import parse_formula
from .printer import print_formula
from .rewriter import (
    MODES,
    NormalFormFailure,
    agree_up_to,
    equivalence_verdicts,
    finalize,
    measure,
    rewrite_trace,
)
from .scriptio import load_script, save_script
from .semantics import DEFAULT_CAP, EvalError, evaluate, find_witness
from .syntax import FormulaClass, SyntaxErrorAt, classify, is_relational
from .synthesis import Refusal, SeparatorSpec, build_separator, prove_delta0, prove_separator, prove_sigma1

OK, REJECTED, MALFORMED, REFUSED = 0, 1, 2, 3


class _Malformed(Exception):
    pass


def _text(arg: str) -> str:
    """A literal, or the contents of the file it names (``#`` lines dropped)."""
    p = Path(arg)
    if p.is_file():
        lines = [ln for ln in p.read_text(encoding="utf-8").splitlines() if not ln.lstrip().startswith("#")]
        return " ".join(lines).strip()
    return arg


def _formula(arg: str, language: str | None = None):
    text = _text(arg)
    langs = [language] if language else ["relational", "classical"]
    err = None
    for lang in langs:
        try:
            return parse_formula(text, lang)
        except SyntaxErrorAt as e:
            err = err or e
    raise _Malformed(f"cannot parse formula: {err}")


def _assignment(text: str | None) -> dict:
    out = {}
    for part in filter(None, (text or "").split(",")):
        name, _, val = part.partition("=")
        if not name.strip() or not val.strip().isdigit():
            raise _Malformed(f"bad assignment {part!r}; expected name=number")
        out[name.strip()] = int(val)
    return out


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _refused(r: Refusal) -> int:
    _err(f"refused reason={r.reason}: {r.message}")
    return REFUSED


def _emit_checked(script, emit: str | None, comments: list[str]) -> int:
    try:
        j = check(script)
    except KernelError as e:  # a producer bug, reported as a rejection
        _err(f"REJECTED: {e}")
        return REJECTED
    if emit:
        save_script(script, emit, comments)
    print(f"{j.theory} |-{j.profile} {print_formula(j.theorem)}  ({len(script)} steps)")
    return OK


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    status = OK
    for path in args.files:
        try:
            script = load_script(path)
            j = check(script)
        except FileNotFoundError:
            _err(f"MALFORMED {path}: no such file")
            status = max(status, MALFORMED)
            continue
        except MalformedScript as e:
            _err(f"MALFORMED {path}: {e}")
            status = max(status, MALFORMED)
            continue
        except KernelError as e:
            _err(f"REJECTED {path}: {e}")
            status = max(status, REJECTED) if status != MALFORMED else status
            continue
        if not args.quiet:
            print(f"OK {path}: {j.theory} |-{j.profile} {print_formula(j.theorem)}")
    return status


def cmd_prove(args) -> int:
    phi = _formula(args.sentence, "relational")
    cls = classify(phi)
    try:
        if cls is FormulaClass.DELTA0:
            script = prove_delta0(phi)
        elif cls is FormulaClass.SIGMA1:
            script = prove_sigma1(phi, args.cap)
        else:
            raise Refusal("outside-class", f"{print_formula(phi)} is neither Delta0 nor Sigma1")
    except Refusal as r:
        return _refused(r)
    return _emit_checked(script, args.emit, [f"sentence: {print_formula(phi)}"])


def cmd_eval(args) -> int:
    phi = _formula(args.formula)
    try:
        val = evaluate(phi, _assignment(args.assign), args.cap)
    except EvalError as e:
        raise _Malformed(str(e)) from None
    print(str(val).lower() if isinstance(val, bool) else str(val))
    return OK


def cmd_rewrite(args) -> int:
    phi = _formula(args.input, "classical")
    if args.verdicts:
        for v in equivalence_verdicts(args.verify_bound):
            print(f"# {v}")
    try:
        steps = rewrite_trace(phi, args.mode)
    except NormalFormFailure as e:
        _err(f"refused reason=normal-form-failure: {e}")
        return REFUSED
    if args.trace:
        print(f"# 0 measure={_fmt_measure(steps[0].before if steps else None, phi)}  {print_formula(phi)}")
        for k, st in enumerate(steps, 1):
            print(f"# {k} measure={_fmt_measure(st.after)}  {st.rule} on {print_formula(st.atom)}")
    out = finalize(steps[-1].formula if steps else phi)
    if not is_relational(out):
        _err("refused reason=normal-form-failure: residual + or * after rewriting")
        return REFUSED
    text = print_formula(out)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    if args.verify_bound > 0:
        cx = agree_up_to(phi, out, args.verify_bound)
        if cx is not None:
            _err(f"verdict mismatch at {cx}")
            return REJECTED
        print(f"# agrees with input on all values <= {args.verify_bound}")
    return OK


def _fmt_measure(m, phi=None) -> str:
    m = m if m is not None else measure(phi)
    return "{" + ",".join(str(k) for k in sorted(m.elements())) + "}"


def cmd_separator(args) -> int:
    spec = SeparatorSpec(_formula(args.alpha, "relational"), _formula(args.beta, "relational"))
    try:
        sep = build_separator(spec)
        script = prove_separator(spec, args.n, args.side, args.cap)
    except Refusal as r:
        return _refused(r)
    except ValueError as e:
        raise _Malformed(str(e)) from None
    status = _emit_checked(script, args.emit, [f"separator side={args.side} n={args.n}"])
    if status == OK:
        truth = find_witness(sep.at(args.n), args.cap) is not None
        expected = args.side == "pos"
        if args.side == "pos" and not truth:
            _err("verdict mismatch: the evaluator finds no witness for phi(n)")
            return REJECTED
        print(f"# evaluator: phi({args.n}) is {'true' if truth else 'false up to the cap'}"
              f" (expected {'true' if expected else 'false'})")
    return status


def _axiom_ref(ident: str, m, n) -> AxiomRef:
    theory = "R~" if ident.upper().startswith("R") else "Q~"
    name = ident.replace("~", "")
    params = tuple(p for p in (m, n) if p is not None)
    return AxiomRef(theory, name, params)


def cmd_theory(args) -> int:
    from .theories import TEMPLATES, expand_template, q_proves_r, write_golden

    try:
        if args.action == "show":
            print(print_formula(axiom_formula(_axiom_ref(args.ident, args.m, args.n))))
            return OK
        if args.action == "derive":
            ref = _axiom_ref(args.ident, args.m, args.n)
            script = q_proves_r(ref)
            return _emit_checked(script, args.emit, [f"Q~ derivation of {ref.id}{ref.params}"])
        if args.action == "golden":
            for p in write_golden(args.out):
                print(p)
            return OK
        if args.action == "templates":
            for t in TEMPLATES.values():
                params = " ".join(f"{n}:{s}" for n, s in t.params)
                print(f"{t.id:18} {'/'.join(t.profiles):18} {params:45} {t.doc}")
            return OK
        if args.action == "template":
            params = {}
            for item in args.set or []:
                k, _, v = item.partition("=")
                params[k.strip()] = v.strip()
            tpl = TEMPLATES.get(args.ident)
            sorts = dict(tpl.params) if tpl else {}
            for k, v in params.items():
                if sorts.get(k) == "formula":
                    params[k] = _formula(v, "relational")
            script = expand_template(args.ident, args.profile, **params)
            return _emit_checked(script, args.emit, [f"template {args.ident}"])
    except AxiomError as e:
        raise _Malformed(str(e)) from None
    except (ValueError, SyntaxErrorAt) as e:
        raise _Malformed(str(e)) from None
    raise _Malformed(f"unknown theory action {args.action!r}")


def cmd_corpus(args) -> int:
    kind = args.kind
    if kind == "delta0":
        items = list(corpus_mod.delta0_corpus())
        seed = None

        def verdict(f):
            return "true" if evaluate(f) else "false"
    elif kind == "sigma1":
        seed = args.seed
        items = corpus_mod.sigma1_corpus(args.count, seed, true_only=not args.mixed)

        def verdict(f):
            w = find_witness(f, corpus_mod.MAX_WITNESS)
            return f"true witness={w}" if w is not None else f"unknown-up-to {corpus_mod.MAX_WITNESS}"
    else:
        seed = args.seed
        items = corpus_mod.classical_corpus(args.count, seed)

        def verdict(f):
            try:
                rewrite_trace(f, "strict")
                return "strict-normalises"
            except NormalFormFailure:
                return "strict-fails"
    text = corpus_mod.manifest(kind, items, seed, verdict)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(items)} entries to {args.out}")
    else:
        sys.stdout.write(text)
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relarith", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="kernel-check .prf proof scripts")
    p.add_argument("files", nargs="+")
    p.add_argument("-q", "--quiet", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("prove", help="synthesize an R~ proof of a Delta0 or Sigma1 sentence")
    p.add_argument("--sentence", required=True, help="formula literal or file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--emit", help="write the script here")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("eval", help="evaluate a formula in the standard model")
    p.add_argument("--formula", required=True)
    p.add_argument("--assign", help="comma-separated name=value pairs")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("rewrite", help="eliminate + and * from a classical Delta0 formula")
    p.add_argument("--mode", choices=MODES, default="corrected")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--verify-bound", type=int, default=8)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--verdicts", action="store_true", help="report the literal equivalences' oracle verdicts")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("separator", help="prove phi(n) or !phi(n) for a separator")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=("pos", "neg"), required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--emit")
    p.set_defaults(func=cmd_separator)

    p = sub.add_parser("theory", help="axiom instances, Q~ derivations and templates")
    p.add_argument("action", choices=("show", "derive", "golden", "templates", "template"))
    p.add_argument("ident", nargs="?", help="axiom id such as R~4 or Q7b, or a template id")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--emit")
    p.add_argument("--out", default="golden")
    p.add_argument("--profile")
    p.add_argument("--set", action="append", help="template parameter name=value")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("corpus", help="write a test corpus manifest")
    p.add_argument("kind", choices=("delta0", "sigma1", "classical"))
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=corpus_mod.DEFAULT_SEED)
    p.add_argument("--mixed", action="store_true", help="sigma1: include sentences without a small witness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "theory" and args.action in ("show", "derive", "template") and not args.ident:
        _err(f"theory {args.action} needs an identifier")
        return MALFORMED
    try:
        return args.func(args)
    except _Malformed as e:
        _err(f"MALFORMED: {e}")
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
