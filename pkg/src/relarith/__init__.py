"""Proof kernel, proof synthesis and formula rewriting for weak substructural
arithmetic over the relational language ``0, S, =, <=, A, M``."""
from .parser import parse_formula, parse_term
from .printer import print_formula, print_term
from .syntax import (
    BOT,
    Add,
    And,
    BExists,
    BForall,
    Bot,
    Eq,
    Exists,
    Forall,
    FormulaClass,
    Iff,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Plus,
    Succ,
    Times,
    Var,
    ZERO,
    classify,
    expand_bounded,
    free_vars,
    numeral,
    same_formula,
    substitute,
)

from .kernel import Judgment, KernelError, MalformedScript, ProofScript, Step, check, compose
from .scriptio import format_script, load_script, parse_script, save_script
from .semantics import FalseUpToBound, TrueWithWitness, evaluate, find_witness
from .synthesis import (
    Refusal,
    SeparatorSpec,
    build_separator,
    prove_delta0,
    prove_false_delta0,
    prove_separator,
    prove_sigma1,
    prove_true_delta0,
)
from .rewriter import NormalFormFailure, atom_shape, dm_less, eliminate_functions, measure, rewrite_step

__version__ = "0.1.0"
