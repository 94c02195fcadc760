"""The signed operator: is #A in G(U), in F(U), or in neither?

``sign`` decides membership by structural recursion on A.  A T-atom is
settled by lookups in U and never by unfolding the sentence it names;
unfolding happens only across stages of a fixed-point iteration.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .coding import CodeRegistry, CodingError, TruthSet, Universe
from .model import BaseModel, eval_L
from .syntax import (
    And, CodeLiteral, ExistsT, ForallT, Iff, Implies, Not, Or, Sentence, TAtom, is_pure,
)


class Sign(enum.Enum):
    IN_G = "G"
    IN_F = "F"
    NEITHER = "neither"
    BOTH = "both"    # only for inconsistent U

    @classmethod
    def of(cls, in_g: bool, in_f: bool) -> "Sign":
        if in_g and in_f:
            return cls.BOTH
        if in_g:
            return cls.IN_G
        if in_f:
            return cls.IN_F
        return cls.NEITHER

    @property
    def in_g(self) -> bool:
        return self in (Sign.IN_G, Sign.BOTH)

    @property
    def in_f(self) -> bool:
        return self in (Sign.IN_F, Sign.BOTH)


RULE_OF = {Not: "r3", Or: "r4", And: "r5", Implies: "r6", Iff: "r7",
           ExistsT: "r8", ForallT: "r9", TAtom: "r2"}


def quantified_T_sign(reg: CodeRegistry, u: TruthSet, which: Sentence,
                      full_semantics: bool = False) -> Sign:
    """Closed-form verdict for ``exists x . T(x)`` and ``forall x . T(x)``.

    T ranges over the codes of all sentences, an infinite set, while U is
    finite.  So the existential is in G iff some code is in U and never in
    F; the universal is never in G and is in F iff U holds the code of a
    negation.  ``full_semantics`` instead gives the verdicts these take at
    any fixed point of the unrestricted operator (G and F respectively).
    """
    if isinstance(which, ExistsT):
        return Sign.IN_G if full_semantics or u else Sign.NEITHER
    if isinstance(which, ForallT):
        if full_semantics:
            return Sign.IN_F
        negated = any(isinstance(reg.sentence(c), Not) for c in u)
        return Sign.IN_F if negated else Sign.NEITHER
    raise TypeError(f"not a quantified T sentence: {which!r}")


def _t_atom(reg: CodeRegistry, u: TruthSet, a: TAtom) -> tuple[bool, bool]:
    if not isinstance(a.arg, CodeLiteral):
        raise CodingError(f"unresolved T argument {a.arg!r}")
    code = a.arg.value
    reg.sentence(code)          # raises when unregistered
    neg = reg.negation_code(code)
    return code in u, neg is not None and neg in u


def _flags(m, reg, u, a, full) -> tuple[bool, bool]:
    if is_pure(a):
        truth = eval_L(m, a)
        return truth, not truth
    if isinstance(a, TAtom):
        return _t_atom(reg, u, a)
    if isinstance(a, Not):
        g, f = _flags(m, reg, u, a.inner, full)
        return f, g
    if isinstance(a, (ExistsT, ForallT)):
        s = quantified_T_sign(reg, u, a, full)
        return s.in_g, s.in_f
    lg, lf = _flags(m, reg, u, a.left, full)
    rg, rf = _flags(m, reg, u, a.right, full)
    return _combine(type(a), lg, lf, rg, rf)


def _combine(kind, lg, lf, rg, rf):
    if kind is Or:
        return lg or rg, lf and rf
    if kind is And:
        return lg and rg, lf or rf
    if kind is Implies:
        return lf or rg, lg and rf
    if kind is Iff:
        return (lg and rg) or (lf and rf), (lg and rf) or (lf and rg)
    raise TypeError(f"not a connective: {kind!r}")


def sign(m: BaseModel, reg: CodeRegistry, u: TruthSet, a: Sentence,
         full_semantics: bool = False) -> Sign:
    """Where #a lies relative to G(u) and F(u)."""
    return Sign.of(*_flags(m, reg, frozenset(u), reg.resolve(a), full_semantics))


# ------------------------------------------------------------------ traces

@dataclass
class Trace:
    sentence: Sentence
    rule: str
    sign: Sign
    note: str = ""
    children: list = field(default_factory=list)

    def to_dict(self, reg: Optional[CodeRegistry] = None) -> dict:
        text = reg.render(self.sentence) if reg else str(self.sentence)
        return {
            "sentence": text,
            "rule": self.rule,
            "sign": self.sign.value,
            "note": self.note,
            "children": [c.to_dict(reg) for c in self.children],
        }

    def render(self, reg: Optional[CodeRegistry] = None, indent: str = "") -> str:
        text = reg.render(self.sentence) if reg else str(self.sentence)
        line = f"{indent}[{self.rule}] {text}  => {self.sign.value}"
        if self.note:
            line += f"  ({self.note})"
        lines = [line]
        for child in self.children:
            lines.append(child.render(reg, indent + "    "))
        return "\n".join(lines)


def explain(m: BaseModel, reg: CodeRegistry, u: TruthSet, a: Sentence,
            full_semantics: bool = False) -> Trace:
    """Same recursion as ``sign``, recording which rule fired at each node."""
    return _explain(m, reg, frozenset(u), reg.resolve(a), full_semantics)


def _yes(flag):
    return "yes" if flag else "no"


def _explain(m, reg, u, a, full) -> Trace:
    if is_pure(a):
        truth = eval_L(m, a)
        return Trace(a, "r1", Sign.of(truth, not truth),
                     "true in the base model" if truth else "false in the base model")
    if isinstance(a, TAtom):
        g, f = _t_atom(reg, u, a)
        code = a.arg.value
        neg = reg.negation_code(code)
        neg_text = f"#{neg}" if neg is not None else "unregistered"
        note = f"#{code} in U: {_yes(g)}; negation ({neg_text}) in U: {_yes(f)}"
        return Trace(a, "r2", Sign.of(g, f), note)
    if isinstance(a, (ExistsT, ForallT)):
        s = quantified_T_sign(reg, u, a, full)
        if full:
            note = "full fixed-point verdict"
        elif isinstance(a, ExistsT):
            note = f"U has {len(u)} code(s)"
        else:
            witnesses = sorted(c for c in u if isinstance(reg.sentence(c), Not))
            note = f"negation codes in U: {witnesses}" if witnesses else "no negation code in U"
        return Trace(a, RULE_OF[type(a)], s, note)
    if isinstance(a, Not):
        child = _explain(m, reg, u, a.inner, full)
        return Trace(a, "r3", Sign.of(child.sign.in_f, child.sign.in_g), children=[child])
    left = _explain(m, reg, u, a.left, full)
    right = _explain(m, reg, u, a.right, full)
    g, f = _combine(type(a), left.sign.in_g, left.sign.in_f, right.sign.in_g, right.sign.in_f)
    return Trace(a, RULE_OF[type(a)], Sign.of(g, f), children=[left, right])


# -------------------------------------------------------- restricted G and F

class ClosureError(ValueError):
    pass


def _check_inside(u: TruthSet, universe: Universe):
    stray = frozenset(u) - universe.codes
    if stray:
        raise ClosureError(f"codes outside the universe: {sorted(stray)}")


def restricted_G(m: BaseModel, reg: CodeRegistry, u: Iterable[int], universe: Universe,
                 full_semantics: bool = False) -> TruthSet:
    """G(u) intersected with the codes of ``universe``."""
    u = frozenset(u)
    _check_inside(u, universe)
    return frozenset(reg.by_sentence[a] for a in universe
                     if _flags(m, reg, u, a, full_semantics)[0])


def restricted_F(m: BaseModel, reg: CodeRegistry, u: Iterable[int], universe: Universe,
                 full_semantics: bool = False) -> TruthSet:
    """F(u) intersected with the codes of ``universe``."""
    u = frozenset(u)
    _check_inside(u, universe)
    return frozenset(reg.by_sentence[a] for a in universe
                     if _flags(m, reg, u, a, full_semantics)[1])
