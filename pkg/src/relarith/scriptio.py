"""Reading and writing ``.prf`` proof-script files.

Example::

    # comment
    profile: QL0
    theory: R~
    hyp: 0 = 0
    step 1 axiom identity [phi=bot] :: bot -> bot
    step 2 theory R4(1) [x=S(0)] :: 1 <= 1 <-> 1 = 0 | 1 = 1
    step 3 rule mp from 1,2 [phi=bot -> bot; psi=...] :: ...
    step 4 theory hyp :: 0 = 0
    label (5) = 4

Bindings are ``;``-separated ``name=value`` pairs; a value's sort (formula,
term or variable) is taken from the schema.  Step numbers are 1-based and
must be consecutive.
"""
from __future__ import annotations

import re
from pathlib import Path

from .kernel import SCHEMAS, MalformedScript, ProofScript, Step
from .parser import parse_formula, parse_term
from .printer import print_formula, print_term
from .syntax import SyntaxErrorAt, TERM_TYPES

_STEP = re.compile(
    r"step\s+(?P<k>\d+)\s+(?P<kind>axiom|theory|rule)\s+(?P<name>[^\s\[(]+)"
    r"(?:\((?P<params>[\d,\s]*)\))?"
    r"(?:\s+from\s+(?P<from>[\d,\s]+?))?"
    r"\s*(?:\[(?P<bind>[^\]]*)\])?\s*::\s*(?P<concl>.+)$"
)
_LABEL = re.compile(r"label\s+(?P<name>\S+)\s*=\s*(?P<k>\d+)$")


def _formula(text: str, lineno: int):
    try:
        return parse_formula(text.strip(), allow_reserved=True)
    except SyntaxErrorAt as e:
        raise MalformedScript(f"line {lineno}: {e}") from None


def _value(text: str, sort: str, lineno: int):
    text = text.strip()
    try:
        if sort == "variable":
            if not re.fullmatch(r"_?[a-z][a-z0-9_]*", text):
                raise SyntaxErrorAt(f"expected a variable, found {text!r}", 0)
            return text
        if sort == "term":
            return parse_term(text, allow_reserved=True)
        return parse_formula(text, allow_reserved=True)
    except SyntaxErrorAt as e:
        raise MalformedScript(f"line {lineno}: {e}") from None


def _bindings(text: str | None, sorts: dict[str, str] | None, lineno: int) -> tuple:
    if not text or not text.strip():
        return ()
    out = []
    for part in text.split(";"):
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)", part, re.S)
        if not m:
            raise MalformedScript(f"line {lineno}: bad binding {part.strip()!r}")
        name, val = m.group(1), m.group(2)
        sort = "term" if sorts is None else sorts.get(name)
        if sort is None:
            raise MalformedScript(f"line {lineno}: unexpected binding {name!r}")
        out.append((name, _value(val, sort, lineno)))
    return tuple(out)


def parse_script(text: str) -> ProofScript:
    """Parse ``.prf`` text.  Raises :class:`MalformedScript` on format errors."""
    profile = theory = None
    hyps, steps, labels = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("profile:"):
            profile = line.split(":", 1)[1].strip()
        elif line.startswith("theory:"):
            theory = line.split(":", 1)[1].strip()
        elif line.startswith("hyp:"):
            hyps.append(_formula(line.split(":", 1)[1], lineno))
        elif line.startswith("label"):
            m = _LABEL.match(line)
            if not m:
                raise MalformedScript(f"line {lineno}: bad label line")
            labels.append((m.group("name"), int(m.group("k")) - 1))
        elif line.startswith("step"):
            m = _STEP.match(line)
            if not m:
                raise MalformedScript(f"line {lineno}: cannot read step")
            k = int(m.group("k"))
            if k != len(steps) + 1:
                raise MalformedScript(f"line {lineno}: expected step {len(steps) + 1}, found {k}")
            kind, name = m.group("kind"), m.group("name")
            params = tuple(int(p) for p in (m.group("params") or "").replace(" ", "").split(",") if p)
            prem = tuple(int(p) - 1 for p in (m.group("from") or "").replace(" ", "").split(",") if p)
            if kind == "theory" and prem:
                raise MalformedScript(f"line {lineno}: theory steps take no premises")
            if kind == "theory":
                sorts = None
            else:
                schema = SCHEMAS.get(name)
                if schema is None:
                    raise MalformedScript(f"line {lineno}: unknown schema {name!r}")
                sorts = dict(schema.sorts)
            steps.append(Step(kind, name, _formula(m.group("concl"), lineno),
                              _bindings(m.group("bind"), sorts, lineno), prem, params))
        else:
            raise MalformedScript(f"line {lineno}: unrecognised line")
    if profile is None or theory is None:
        raise MalformedScript("missing 'profile:' or 'theory:' header")
    if not steps:
        raise MalformedScript("script has no steps")
    return ProofScript(profile, theory, tuple(steps), tuple(hyps), tuple(labels))


def _value_text(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, TERM_TYPES):
        return print_term(v)
    return print_formula(v)


def format_script(script: ProofScript, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    lines += [f"profile: {script.profile}", f"theory: {script.theory}"]
    lines += [f"hyp: {print_formula(h)}" for h in script.hypotheses]
    for k, st in enumerate(script.steps, 1):
        head = f"step {k} {st.kind} {st.name}"
        if st.params:
            head += f"({','.join(map(str, st.params))})"
        if st.premises:
            head += " from " + ",".join(str(p + 1) for p in st.premises)
        if st.bindings:
            head += " [" + "; ".join(f"{n}={_value_text(v)}" for n, v in st.bindings) + "]"
        lines.append(f"{head} :: {print_formula(st.conclusion)}")
    lines += [f"label {name} = {i + 1}" for name, i in script.labels]
    return "\n".join(lines) + "\n"


def load_script(path) -> ProofScript:
    return parse_script(Path(path).read_text(encoding="utf-8"))


def save_script(script: ProofScript, path, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_script(script, comments), encoding="utf-8")
