"""Ten norms for a theory of truth, checked at a computed fixed point.

Norms (b), (d), (e) and (i) have finite observables and are checked by
evaluation.  The remaining ones are properties of how the language and
its interpretation are set up; the report card lists them with the
reason they hold, without a runtime check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coding import CodeRegistry
from .fixpoint import FixedPointReport, VERDICT
from .model import BaseModel, eval_L
from .operator import Sign, sign
from .syntax import And, CodeLiteral, Iff, Implies, Not, Or, TAtom, is_pure


@dataclass
class NormResult:
    norm: str
    title: str
    status: str                       # "pass", "fail" or "by-construction"
    checked: int = 0
    violations: list = field(default_factory=list)
    exemptions: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {"norm": self.norm, "title": self.title, "status": self.status,
                "checked": self.checked, "violations": list(self.violations),
                "exemptions": list(self.exemptions), "note": self.note}


def _result(norm, title, checked, violations, exemptions=(), note=""):
    return NormResult(norm, title, "fail" if violations else "pass", checked,
                      list(violations), list(exemptions), note)


def check_norm_b(m: BaseModel, reg: CodeRegistry, report: FixedPointReport) -> NormResult:
    """A sentence of L is true in the model iff T of it is classified true (same for false)."""
    violations = []
    checked = 0
    for t in report.universe:
        if not isinstance(t, TAtom):
            continue
        a = reg.sentence(t.arg.value)
        if not is_pure(a):
            continue
        checked += 1
        expected = "true" if eval_L(m, a) else "false"
        got = report.classification[t]
        if got != expected:
            violations.append(f"{reg.render(a)} is {expected} in the model "
                              f"but {reg.render(t)} is {got}")
    return _result("b", "theories modelled by the base structure come out true",
                   checked, violations)


def check_norm_d(m: BaseModel, reg: CodeRegistry, report: FixedPointReport) -> NormResult:
    """A <-> T(#A) is true for every tracked A that is true or false."""
    violations, exemptions = [], []
    checked = 0
    fp = report.fixed_point
    for a in report.universe:
        verdict = report.classification[a]
        code = reg.by_sentence[a]
        if verdict not in ("true", "false"):
            exemptions.append(f"{reg.render(a)}: {verdict}, outside the sublanguage")
            continue
        neg = reg.negation_code(code)
        if verdict == "false" and (neg is None or neg not in report.universe.codes):
            exemptions.append(f"{reg.render(a)}: false, but its negation is not tracked")
            continue
        checked += 1
        got = sign(m, reg, fp, Iff(a, TAtom(CodeLiteral(code))), report.full_semantics)
        if got is not Sign.IN_G:
            violations.append(f"T-biconditional for {reg.render(a)} is {VERDICT[got]}")
    return _result("d", "T-biconditionals hold unrestrictedly", checked, violations, exemptions)


# strong Kleene tables over the three verdicts, written out independently
# of the operator's flag arithmetic
_NEG = {"true": "false", "false": "true", "ungrounded": "ungrounded"}


def _or(a, b):
    if "true" in (a, b):
        return "true"
    if a == b == "false":
        return "false"
    return "ungrounded"


def _and(a, b):
    return _NEG[_or(_NEG[a], _NEG[b])]


def _implies(a, b):
    return _or(_NEG[a], b)


def _iff(a, b):
    if "ungrounded" in (a, b):
        return "ungrounded"
    return "true" if a == b else "false"


_TABLES = ((Or, _or), (And, _and), (Implies, _implies), (Iff, _iff))


def check_norm_e(m: BaseModel, reg: CodeRegistry, report: FixedPointReport,
                 samples: int = 200, seed: int = 0) -> NormResult:
    """Compound verdicts follow the three-valued tables of their parts.

    Draws ``samples`` pairs (A, B) of tracked sentences; each pair is
    checked under negation and the four binary connectives.
    """
    tracked = list(report.universe)
    cls = report.classification
    fp = report.fixed_point
    violations = []
    checked = 0
    if tracked:
        rng = random.Random(seed)
        for _ in range(samples):
            a, b = rng.choice(tracked), rng.choice(tracked)
            if "both" in (cls[a], cls[b]):
                checked += 1
                violations.append(f"{reg.render(a)} / {reg.render(b)}: a part is both")
                continue
            cases = [(Not(a), _NEG[cls[a]])]
            cases += [(kind(a, b), table(cls[a], cls[b])) for kind, table in _TABLES]
            for compound, expected in cases:
                checked += 1
                got = VERDICT[sign(m, reg, fp, compound, report.full_semantics)]
                if got != expected:
                    violations.append(f"{reg.render(compound)}: expected {expected}, got {got}")
    return _result("e", "truth is compositional", checked, violations)


def check_norm_i(m: BaseModel, reg: CodeRegistry, report: FixedPointReport) -> NormResult:
    """No tracked sentence is both true and false; paradoxes end up ungrounded."""
    violations, exemptions = [], []
    fp = report.fixed_point
    consistency = reg.check_consistent(fp)
    if not consistency:
        a, na = consistency.witness
        violations.append(f"fixed point contains both #{a} and its negation #{na}")
    for a in report.universe:
        s = sign(m, reg, fp, a, report.full_semantics)
        if s is Sign.BOTH:
            violations.append(f"{reg.render(a)} is both true and false")
        elif s is Sign.NEITHER:
            exemptions.append(f"{reg.render(a)}: ungrounded")
    return _result("i", "free from paradoxes", len(report.universe), violations, exemptions)


STATIC_NORMS = {
    "a": ("truth is expressed by a predicate",
          "T is a predicate of the object language; codes of sentences are terms "
          "(code literals and aliases), so syntax is available."),
    "c": ("no type restrictions on the truth predicate",
          "T applies to the code of any sentence, including sentences that mention T."),
    "f": ("standard interpretations are allowed",
          "sentences without T are read in the base structure with the standard membership relation."),
    "g": ("outer and inner logic coincide",
          "follows from the T-biconditionals checked under (d)."),
    "h": ("outer logic is classical",
          "on true or false sentences the connective rules are the two-valued tables."),
    "j": ("truth is defined within the language itself",
          "T is interpreted by a fixed point of an operator on codes of the same language."),
}

ORDER = "abcdefghij"


def report_card(m: BaseModel, reg: CodeRegistry, report: FixedPointReport,
                samples: int = 200, seed: int = 0) -> list:
    """All ten norms in order; runtime checks for b, d, e, i."""
    results = {
        "b": check_norm_b(m, reg, report),
        "d": check_norm_d(m, reg, report),
        "e": check_norm_e(m, reg, report, samples, seed),
        "i": check_norm_i(m, reg, report),
    }
    for norm, (title, note) in STATIC_NORMS.items():
        results[norm] = NormResult(norm, title, "by-construction", note=note)
    return [results[n] for n in ORDER]
