"""Grounded truth for sentences about a finite membership structure.

Sentences may mention a truth predicate T applied to codes of sentences,
including their own.  Truth is a fixed point of a monotone operator on
consistent sets of codes; the least one leaves Liar-like sentences
ungrounded rather than contradictory.
"""
from .coding import CodeRegistry, Consistency, TruthSet, Universe, load_definitions
from .fixpoint import (
    FixedPointReport, IterationTrace, enumerate_fixed_points, extend_from_sound,
    greatest_sound_subset, lfp,
)
from .model import BaseModel, default_model, eval_L, load_model
from .operator import Sign, Trace, explain, quantified_T_sign, restricted_F, restricted_G, sign
from .syntax import parse, subformulas, unparse, validate
from .workspace import Workspace

__version__ = "0.1.0"

__all__ = [
    "BaseModel", "CodeRegistry", "Consistency", "FixedPointReport", "IterationTrace",
    "Sign", "Trace", "TruthSet", "Universe", "Workspace",
    "default_model", "enumerate_fixed_points", "eval_L", "explain", "extend_from_sound",
    "greatest_sound_subset", "lfp", "load_definitions", "load_model", "parse",
    "quantified_T_sign", "restricted_F", "restricted_G", "sign", "subformulas",
    "unparse", "validate",
]
