"""Axiom tables, derived-rule templates and the Q~ to R~ derivations."""
from ..axioms import AxiomRef, THEORIES, axiom_formula
from .builder import ProofBuilder, TemplateError
from .qr import QBuilder, claim1_script, q_proves_r
from .templates import TEMPLATES, expand_template, golden_scripts, template_premises, write_golden

__all__ = [
    "AxiomRef", "THEORIES", "axiom_formula", "ProofBuilder", "TemplateError", "QBuilder",
    "claim1_script", "q_proves_r", "TEMPLATES", "expand_template", "golden_scripts",
    "template_premises", "write_golden",
]
