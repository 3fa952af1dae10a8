"""Test corpora: Delta_0 sentences, Sigma_1 sentences and classical formulas.

The Delta_0 corpus is enumerated, not sampled.  A sentence is a quantifier
prefix wrapped around a connective skeleton whose leaves are filled from an
atom palette.  The enumeration runs over

* every prefix of at most two bounded quantifiers (``All``/``Ex``, bounds
  ``0..3``; an inner bound may also be the outer variable),
* every skeleton over ``!``, ``&``, ``|`` of connective depth at most 2
  (37 of them), with three palette rotations each,
* and, without a prefix, every skeleton of depth exactly 3 (2739 of them).

The palette depends on which bound variables are in scope; numerals never
exceed 3.  The other two corpora are drawn from a seeded
:class:`random.Random`, so a seed reproduces them exactly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .parser import parse_formula
from .printer import print_formula
from .semantics import find_witness, holds
from .syntax import And, BExists, BForall, Exists, Not, Or, Var, numeral

MAX_NUMERAL = 3
DEFAULT_SEED = 20240601

# ---------------------------------------------------------------------------
# Delta_0 enumeration

_PALETTES = {
    0: ["1 = 1", "0 = 2", "2 <= 3", "3 <= 1", "A(1, 2, 3)", "A(2, 2, 3)",
        "M(2, 3, 0)", "M(1, 3, 3)", "0 <= 0", "3 = 3", "M(0, 3, 0)", "A(0, 0, 1)"],
    1: ["y = 1", "y <= 2", "A(y, 1, 2)", "M(y, y, 0)", "1 <= y", "y = 3",
        "A(1, y, y)", "M(2, y, 2)", "0 = y", "y <= 0", "2 <= 1", "1 = 1"],
    2: ["y = z", "y <= z", "A(y, z, 3)", "M(y, z, 2)", "z <= 1", "y = 2",
        "A(z, 1, y)", "M(y, 1, z)", "z = 0", "1 <= y", "2 = 2", "3 <= 0"],
}
_PALETTE_ATOMS = {k: [parse_formula(s) for s in v] for k, v in _PALETTES.items()}
ROTATIONS = 3


@dataclass(frozen=True)
class _Leaf:
    pass


LEAF = _Leaf()


def skeletons(depth: int) -> list:
    """All connective trees over ``!``, ``&``, ``|`` of depth ``<= depth``."""
    if depth == 0:
        return [LEAF]
    smaller = skeletons(depth - 1)
    out = [LEAF] + [("!", s) for s in smaller]
    for op in ("&", "|"):
        out += [(op, a, b) for a in smaller for b in smaller]
    return out


def skeleton_depth(s) -> int:
    if s is LEAF:
        return 0
    return 1 + max(skeleton_depth(c) for c in s[1:])


def _fill(skel, atoms: list, rotation: int):
    counter = itertools.count()

    def go(s):
        if s is LEAF:
            i = next(counter)
            return atoms[(5 * i + 7 * rotation) % len(atoms)]
        if s[0] == "!":
            return Not(go(s[1]))
        left = go(s[1])
        right = go(s[2])
        return (And if s[0] == "&" else Or)(left, right)

    return go(skel)


def prefixes() -> list[list[tuple[str, str, object]]]:
    """Quantifier prefixes as lists of ``(kind, var, bound)``."""
    nums = [numeral(k) for k in range(MAX_NUMERAL + 1)]
    out: list = [[]]
    for k in ("all", "ex"):
        out += [[(k, "y", b)] for b in nums]
    for k1, b1, k2 in itertools.product(("all", "ex"), nums, ("all", "ex")):
        for b2 in nums + [Var("y")]:
            out.append([(k1, "y", b1), (k2, "z", b2)])
    return out


def _wrap(prefix, body):
    for kind, var, bound in reversed(prefix):
        body = (BForall if kind == "all" else BExists)(var, bound, body)
    return body


def delta0_corpus() -> Iterator:
    """The enumerated Delta_0 sentence corpus, in a fixed order."""
    small = skeletons(2)
    for prefix in prefixes():
        atoms = _PALETTE_ATOMS[len(prefix)]
        for skel in small:
            for r in range(ROTATIONS):
                yield _wrap(prefix, _fill(skel, atoms, r))
    for skel in skeletons(3):
        if skeleton_depth(skel) == 3:
            yield _fill(skel, _PALETTE_ATOMS[0], 0)


# ---------------------------------------------------------------------------
# Sigma_1 sampling

MAX_WITNESS = 20


def _sigma1_atom(rng: random.Random, w: int, truthy: bool):
    """A random atom in ``v`` that is true (or false) at ``v = w``."""
    for _ in range(100):
        kind = rng.choice(("eq", "le", "ge", "add", "mul", "bex"))
        a = rng.randint(0, MAX_NUMERAL)
        if kind == "eq":
            n = w if truthy else rng.randint(0, MAX_WITNESS)
            atom = parse_formula(f"v = {n}")
        elif kind == "le":
            atom = parse_formula(f"v <= {rng.randint(0, MAX_WITNESS)}")
        elif kind == "ge":
            atom = parse_formula(f"{rng.randint(0, MAX_WITNESS)} <= v")
        elif kind == "add":
            atom = parse_formula(f"A(v, {a}, {w + a if truthy else rng.randint(0, MAX_WITNESS + 3)})")
        elif kind == "mul":
            atom = parse_formula(f"M({a}, v, {a * w if truthy else rng.randint(0, 3 * MAX_WITNESS)})")
        else:
            atom = parse_formula("Ex u <= v . A(u, u, v)" if rng.random() < 0.5 else "All u <= v . u <= v")
        if holds(atom, {"v": w}) == truthy:
            return atom
    return parse_formula("v = v") if truthy else parse_formula("!v = v")


def _sigma1_matrix(rng: random.Random, w: int, depth: int, truthy: bool = True):
    if depth == 0 or rng.random() < 0.3:
        return _sigma1_atom(rng, w, truthy)
    op = rng.choice(("&", "|", "!"))
    if op == "!":
        return Not(_sigma1_matrix(rng, w, depth - 1, not truthy))
    if (op == "&") == truthy:
        return (And if op == "&" else Or)(_sigma1_matrix(rng, w, depth - 1, truthy),
                                          _sigma1_matrix(rng, w, depth - 1, truthy))
    left_true = rng.random() < 0.5
    parts = [_sigma1_matrix(rng, w, depth - 1, left_true), _sigma1_matrix(rng, w, depth - 1, not left_true)]
    return (And if op == "&" else Or)(*parts)


def sigma1_corpus(count: int = 500, seed: int = DEFAULT_SEED, true_only: bool = True) -> list:
    """``count`` Sigma_1 sentences ``Ex v . phi(v)`` with least witness
    ``<= 20``.  With ``true_only=False`` roughly a quarter have no witness
    up to 20 (they may still be true further out)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = rng.randint(0, MAX_WITNESS)
        want_true = true_only or rng.random() >= 0.25
        body = _sigma1_matrix(rng, w, rng.randint(1, 3), True)
        if not want_true:
            body = And(body, _sigma1_atom(rng, w, False))
        phi = Exists("v", body)
        found = find_witness(phi, MAX_WITNESS) is not None
        if found == want_true:
            out.append(phi)
    return out


# ---------------------------------------------------------------------------
# classical formulas for the rewriter


def _simple_term(rng: random.Random, scope: list[str]):
    choice = rng.random()
    if choice < 0.6:
        return rng.choice(scope)
    if choice < 0.85:
        return str(rng.randint(0, MAX_NUMERAL))
    return f"S({rng.choice(scope)})"


def _compound_term(rng: random.Random, scope: list[str], nesting: int) -> str:
    op = rng.choice(("+", "*"))
    if nesting <= 1:
        return f"({_simple_term(rng, scope)} {op} {_simple_term(rng, scope)})"
    parts = [_compound_term(rng, scope, nesting - 1) if rng.random() < 0.6 else _simple_term(rng, scope)
             for _ in range(2)]
    if rng.random() < 0.2:
        return f"S({parts[0]} {op} {parts[1]})"
    return f"({parts[0]} {op} {parts[1]})"


def _classical_atom(rng: random.Random, scope: list[str]) -> str:
    s = _simple_term(rng, scope)
    if rng.random() < 0.15:
        return f"{s} {rng.choice(('=', '<='))} {_simple_term(rng, scope)}"
    big = _compound_term(rng, scope, rng.choice((1, 2)))
    rel = rng.choice(("=", "<="))
    return f"{big} {rel} {s}" if rng.random() < 0.5 else f"{s} {rel} {big}"


def _classical_formula(rng: random.Random, scope: list[str], depth: int, quantifiers: int) -> str:
    r = rng.random()
    if depth == 0 or r < 0.3:
        return _classical_atom(rng, scope)
    if r < 0.45 and quantifiers > 0:
        var = f"q{quantifiers}"
        bound = rng.choice(scope + [str(rng.randint(0, MAX_NUMERAL))])
        kind = rng.choice(("All", "Ex"))
        body = _classical_formula(rng, scope + [var], depth - 1, quantifiers - 1)
        return f"({kind} {var} <= {bound} . {body})"
    if r < 0.6:
        return f"!({_classical_formula(rng, scope, depth - 1, quantifiers)})"
    op = rng.choice(("&", "|"))
    return (f"({_classical_formula(rng, scope, depth - 1, quantifiers)} {op} "
            f"{_classical_formula(rng, scope, depth - 1, quantifiers)})")


def classical_corpus(count: int = 500, seed: int = DEFAULT_SEED) -> list:
    """Classical Delta_0 formulas over free ``x, y, z`` with ``+``/``*`` nested
    at most twice and variable or numeral bounds."""
    rng = random.Random(seed)
    return [parse_formula(_classical_formula(rng, ["x", "y", "z"], 3, 2), "classical") for _ in range(count)]


# ---------------------------------------------------------------------------
# manifests


def manifest(kind: str, formulas, seed: int | None, verdict) -> str:
    """Plain-text manifest: a header naming the corpus and seed, then one
    ``verdict<TAB>formula`` line per entry."""
    head = [f"# corpus: {kind}", f"# seed: {seed if seed is not None else 'none (enumerated)'}"]
    lines = [f"{verdict(f)}\t{print_formula(f)}" for f in formulas]
    head.append(f"# count: {len(lines)}")
    return "\n".join(head + lines) + "\n"


__all__ = [
    "MAX_NUMERAL", "MAX_WITNESS", "DEFAULT_SEED", "skeletons", "prefixes", "delta0_corpus",
    "sigma1_corpus", "classical_corpus", "manifest",
]
