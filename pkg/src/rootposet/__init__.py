"""Positive-root posets of Dynkin diagrams and their antichains."""

from .antichains import (
    enumerate_antichains, is_antichain, maximal_antichains_of_size, size_distribution,
    verify_main_theorem, width,
)
from .dynkin import Root, DynkinDiagram, default_diagrams, dynkin_diagram, parse_diagram
from .errors import RootPosetError, UnsupportedDiagram, VerificationFailure
from .lemma import LemmaWitness, find_witness, lemma_conclusion, min_chain_cover
from .poset import Poset, RootPoset, build_poset, level_decomposition, level_profile
from .report import VerificationReport, full_report
from .symmetry import automorphism_group

__version__ = "0.1.0"

__all__ = [
    "Poset", "RootPoset", "Root", "DynkinDiagram", "LemmaWitness", "VerificationReport",
    "RootPosetError", "UnsupportedDiagram", "VerificationFailure",
    "automorphism_group", "build_poset", "default_diagrams", "dynkin_diagram",
    "enumerate_antichains", "find_witness", "full_report", "is_antichain",
    "lemma_conclusion", "level_decomposition", "level_profile",
    "maximal_antichains_of_size", "min_chain_cover", "parse_diagram",
    "size_distribution", "verify_main_theorem", "width",
]
