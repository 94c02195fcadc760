"""Sentences of the language {∈, T}: AST, concrete grammar, printing.

Grammar (loosest binding first)::

    sentence := implies ('<->' implies)*
    implies  := disj ('->' implies)?
    disj     := conj ('or' conj)*
    conj     := unary ('and' unary)*
    unary    := 'not' unary | quant | atom | '(' sentence ')'
    quant    := ('exists' | 'forall') IDENT '.' sentence
    atom     := term ('in' | '=') term | 'T' '(' targ ')'
    targ     := '"' IDENT '"' | '#' NAT | IDENT        (bound variable, see below)

Identifiers bound by an enclosing quantifier are variables; all other
identifiers are constants of the base model.  ``T`` may take a bound
variable only in the two closed forms ``exists x . T(x)`` and
``forall x . T(x)``; any other quantifier whose matrix mentions ``T`` is
rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

__all__ = [
    "ModelConst", "Var", "CodeLiteral", "AliasRef", "Term",
    "Membership", "Equality", "TAtom", "Not", "Or", "And", "Implies", "Iff",
    "Exists", "Forall", "ExistsT", "ForallT", "Sentence",
    "SentenceError", "ParseError", "UnsupportedQuantification", "ValidationError",
    "parse", "unparse", "validate", "subformulas", "subformula_list", "is_pure", "walk",
]


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class ModelConst:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class CodeLiteral:
    value: int


@dataclass(frozen=True)
class AliasRef:
    name: str


Term = Union[ModelConst, Var, CodeLiteral, AliasRef]


# ------------------------------------------------------------ sentences

@dataclass(frozen=True)
class Membership:
    lhs: Term
    rhs: Term

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Equality:
    lhs: Term
    rhs: Term

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class TAtom:
    arg: Term

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Not:
    inner: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Or:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class And:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Implies:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Iff:
    left: "Sentence"
    right: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Sentence"

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class ExistsT:
    """The closed sentence ``exists x . T(x)``."""

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class ForallT:
    """The closed sentence ``forall x . T(x)``."""

    def __str__(self):
        return unparse(self)


Sentence = Union[Membership, Equality, TAtom, Not, Or, And, Implies, Iff,
                 Exists, Forall, ExistsT, ForallT]

BINARY = (Or, And, Implies, Iff)
QUANTIFIERS = (Exists, Forall)
ATOMS = (Membership, Equality, TAtom)


# --------------------------------------------------------------- errors

class SentenceError(ValueError):
    """Base class for malformed sentences."""


class ParseError(SentenceError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class UnsupportedQuantification(SentenceError):
    def __init__(self, subformula: Sentence):
        self.subformula = subformula
        super().__init__(
            "quantified formulas mentioning T are limited to 'exists x . T(x)' "
            f"and 'forall x . T(x)'; offending subformula: {unparse(subformula)}")


class ValidationError(SentenceError):
    pass


# ------------------------------------------------------------ traversal

def walk(s: Sentence) -> Iterator[Sentence]:
    """Yield ``s`` and every sentence node below it, pre-order."""
    stack = [s]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.inner)
        elif isinstance(node, BINARY):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, QUANTIFIERS):
            stack.append(node.body)


@lru_cache(maxsize=None)
def is_pure(s: Sentence) -> bool:
    """True when ``s`` does not mention T at all (a sentence of L)."""
    return not any(isinstance(n, (TAtom, ExistsT, ForallT)) for n in walk(s))


def subformula_list(s: Sentence) -> list:
    """Closed subsentences of ``s`` in pre-order, without repeats.

    Sentences without T are atomic here: they are decided by the base
    model as a whole and never split.
    """
    out: list = []
    seen: set = set()
    stack = [s]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        out.append(node)
        if is_pure(node):
            continue
        if isinstance(node, Not):
            stack.append(node.inner)
        elif isinstance(node, BINARY):
            stack.extend((node.right, node.left))
    return out


def subformulas(s: Sentence) -> frozenset:
    """Closed subsentences of ``s``, including ``s`` (see ``subformula_list``)."""
    return frozenset(subformula_list(s))


def validate(s: Sentence) -> Sentence:
    """Check closedness and the restrictions on T; return ``s`` unchanged."""
    _validate(s, frozenset())
    return s


def _validate(s, bound):
    if isinstance(s, (Membership, Equality)):
        for t in (s.lhs, s.rhs):
            if isinstance(t, Var) and t.name not in bound:
                raise ValidationError(f"free variable {t.name!r} in {unparse(s)}")
            if isinstance(t, (CodeLiteral, AliasRef)):
                raise ValidationError(f"code terms may only appear under T: {unparse(s)}")
    elif isinstance(s, TAtom):
        if not isinstance(s.arg, (CodeLiteral, AliasRef)):
            raise ValidationError(f"T takes a code or alias, got {s.arg!r}")
    elif isinstance(s, Not):
        _validate(s.inner, bound)
    elif isinstance(s, BINARY):
        _validate(s.left, bound)
        _validate(s.right, bound)
    elif isinstance(s, QUANTIFIERS):
        if not is_pure(s.body):
            raise UnsupportedQuantification(s)
        _validate(s.body, bound | {s.var})
    elif not isinstance(s, (ExistsT, ForallT)):
        raise ValidationError(f"not a sentence: {s!r}")


# -------------------------------------------------------------- printing

def _term(t: Term) -> str:
    if isinstance(t, (ModelConst, Var)):
        return t.name
    if isinstance(t, CodeLiteral):
        return f"#{t.value}"
    return f'"{t.name}"'


def _operand(s: Sentence) -> str:
    if isinstance(s, TAtom):
        return unparse(s)
    return f"({unparse(s)})"


_OPS = {Or: "or", And: "and", Implies: "->", Iff: "<->"}


def unparse(s: Sentence) -> str:
    """Render ``s`` in the concrete grammar; ``parse`` inverts it."""
    if isinstance(s, Membership):
        return f"{_term(s.lhs)} in {_term(s.rhs)}"
    if isinstance(s, Equality):
        return f"{_term(s.lhs)} = {_term(s.rhs)}"
    if isinstance(s, TAtom):
        return f"T({_term(s.arg)})"
    if isinstance(s, ExistsT):
        return "exists x . T(x)"
    if isinstance(s, ForallT):
        return "forall x . T(x)"
    if isinstance(s, Not):
        inner = s.inner
        if isinstance(inner, (TAtom, Not)):
            return f"not {unparse(inner)}"
        return f"not ({unparse(inner)})"
    if isinstance(s, BINARY):
        return f"{_operand(s.left)} {_OPS[type(s)]} {_operand(s.right)}"
    if isinstance(s, QUANTIFIERS):
        word = "exists" if isinstance(s, Exists) else "forall"
        return f"{word} {s.var} . {unparse(s.body)}"
    raise TypeError(f"not a sentence: {s!r}")


# --------------------------------------------------------------- parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<code>\#\d+)
  | (?P<str>"[A-Za-z_][A-Za-z0-9_']*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[().=])
""", re.VERBOSE)

KEYWORDS = {"in", "not", "or", "and", "exists", "forall", "T"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "ident" and value in KEYWORDS:
            kind = "kw"
        elif kind in ("punct", "iff", "imp"):
            kind = "op"
        if kind != "ws":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.bound: list[str] = []

    def peek(self):
        return self.tokens[self.i]

    def at(self, value):
        kind, val, _ = self.peek()
        return kind in ("kw", "op") and val == value

    def expect(self, value):
        kind, val, pos = self.peek()
        if not self.at(value):
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos, (repr(value),))
        self.i += 1

    def sentence(self):
        left = self.implies()
        while self.at("<->"):
            self.i += 1
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disj(self):
        left = self.conj()
        while self.at("or"):
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("and"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("not"):
            self.i += 1
            return Not(self.unary())
        if self.at("exists") or self.at("forall"):
            return self.quantifier()
        if self.at("("):
            self.i += 1
            inner = self.sentence()
            self.expect(")")
            return inner
        if self.at("T"):
            return self.truth_atom()
        return self.relation()

    def quantifier(self):
        word = self.peek()[1]
        self.i += 1
        kind, name, pos = self.peek()
        if kind != "ident":
            raise ParseError(f"unexpected {name or 'end of input'!r}", pos, ("variable",))
        self.i += 1
        self.expect(".")
        self.bound.append(name)
        try:
            body = self.sentence()
        finally:
            self.bound.pop()
        if body == TAtom(Var(name)):
            return ExistsT() if word == "exists" else ForallT()
        node = Exists(name, body) if word == "exists" else Forall(name, body)
        if not is_pure(body):
            raise UnsupportedQuantification(node)
        return node

    def truth_atom(self):
        self.i += 1
        self.expect("(")
        kind, val, pos = self.peek()
        if kind == "code":
            arg = CodeLiteral(int(val[1:]))
        elif kind == "str":
            arg = AliasRef(val[1:-1])
        elif kind == "ident" and val in self.bound:
            arg = Var(val)
        else:
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos,
                             ('"alias"', "#code", "bound variable"))
        self.i += 1
        self.expect(")")
        return TAtom(arg)

    def term(self):
        kind, val, pos = self.peek()
        if kind != "ident":
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos, ("identifier",))
        self.i += 1
        return Var(val) if val in self.bound else ModelConst(val)

    def relation(self):
        lhs = self.term()
        kind, val, pos = self.peek()
        if self.at("in"):
            self.i += 1
            return Membership(lhs, self.term())
        if self.at("="):
            self.i += 1
            return Equality(lhs, self.term())
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, ("'in'", "'='"))


def parse(text: str) -> Sentence:
    """Parse one sentence.

    Raises ``ParseError`` for malformed text and
    ``UnsupportedQuantification`` when a general quantifier's matrix
    mentions T.
    """
    p = _Parser(text)
    s = p.sentence()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {val!r}", pos, ("end of input",))
    return s
