"""Sentence codes, self-reference through aliases, and code sets.

Codes are handed out in registration order.  Only equality of codes is
ever used, so a registry is as good as an arithmetic numbering and keeps
self-referential codes small.  A self-referential sentence is built in
two phases: ``declare_alias`` reserves a code for a name, then
``register`` binds the sentence (which may mention that same code) to it.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .syntax import (
    BINARY, AliasRef, CodeLiteral, Not, Sentence, SentenceError, TAtom,
    parse, subformula_list, subformulas, unparse, validate, walk,
)

TruthSet = frozenset   # a finite set of registered codes


class CodingError(ValueError):
    pass


class Consistency(NamedTuple):
    ok: bool
    witness: Optional[tuple[int, int]] = None   # (#A, #[not A])

    def __bool__(self):
        return self.ok


class CodeRegistry:
    def __init__(self):
        self.next_code = 0
        self.by_code: dict[int, Sentence] = {}
        self.by_sentence: dict[Sentence, int] = {}
        self.aliases: dict[str, int] = {}
        self._pending: dict[int, str] = {}
        self._alias_of: dict[int, str] = {}
        self.frozen = False

    # -- construction

    def declare_alias(self, name: str) -> int:
        if name in self.aliases:
            raise CodingError(f"duplicate alias {name!r}")
        self._check_mutable()
        code = self.next_code
        self.next_code += 1
        self.aliases[name] = code
        self._pending[code] = name
        self._alias_of[code] = name
        return code

    def add_synonym(self, name: str, code: int) -> None:
        """Let ``name`` denote an already reserved or registered code."""
        if name in self.aliases:
            raise CodingError(f"duplicate alias {name!r}")
        if code not in self.by_code and code not in self._pending:
            raise CodingError(f"code {code} is not reserved")
        self.aliases[name] = code

    def register(self, s: Sentence, alias: Optional[str] = None) -> int:
        """Return the code of ``s``, assigning a fresh one if needed.

        With ``alias``, ``s`` is bound to the code reserved by
        ``declare_alias(alias)``.
        """
        s = validate(self.resolve(s))
        for node in walk(s):
            if isinstance(node, TAtom) and not self._known(node.arg.value):
                raise CodingError(f"T refers to unregistered code {node.arg.value}")
        if alias is not None:
            code = self.aliases.get(alias)
            if code is None:
                raise CodingError(f"unknown alias {alias!r}")
            if code in self.by_code:
                if self.by_code[code] != s:
                    raise CodingError(f"alias {alias!r} is already bound")
                return code
            if s in self.by_sentence:
                raise CodingError(
                    f"alias {alias!r} would duplicate code {self.by_sentence[s]} "
                    f"for {unparse(s)}")
            self._check_mutable()
            del self._pending[code]
            self._bind(code, s)
            return code
        code = self.by_sentence.get(s)
        if code is not None:
            return code
        self._check_mutable()
        code = self.next_code
        self.next_code += 1
        self._bind(code, s)
        return code

    def freeze(self) -> None:
        if self._pending:
            names = sorted(self._pending.values())
            raise CodingError(f"aliases declared but never defined: {', '.join(names)}")
        self.frozen = True

    def _bind(self, code, s):
        self.by_code[code] = s
        self.by_sentence[s] = code

    def _known(self, code):
        return code in self.by_code or code in self._pending

    def _check_mutable(self):
        if self.frozen:
            raise CodingError("registry is frozen")

    # -- lookup

    def resolve(self, s: Sentence) -> Sentence:
        """Replace alias references under T by code literals."""
        if isinstance(s, TAtom):
            if isinstance(s.arg, AliasRef):
                if s.arg.name not in self.aliases:
                    raise CodingError(f"unresolvable alias {s.arg.name!r}")
                return TAtom(CodeLiteral(self.aliases[s.arg.name]))
            return s
        if isinstance(s, Not):
            inner = self.resolve(s.inner)
            return s if inner is s.inner else Not(inner)
        if isinstance(s, BINARY):
            left, right = self.resolve(s.left), self.resolve(s.right)
            if left is s.left and right is s.right:
                return s
            return type(s)(left, right)
        return s

    def code_of(self, s: Sentence) -> Optional[int]:
        """The code of ``s`` if registered, without registering."""
        return self.by_sentence.get(self.resolve(s))

    def sentence(self, code: int) -> Sentence:
        try:
            return self.by_code[code]
        except KeyError:
            raise CodingError(f"code {code} is not registered") from None

    def negation_code(self, code: int) -> Optional[int]:
        return self.by_sentence.get(Not(self.sentence(code)))

    def alias_of(self, code: int) -> Optional[str]:
        return self._alias_of.get(code)

    def render(self, s: Sentence) -> str:
        """Print ``s`` with code literals shown as alias names where possible."""
        return unparse(self._aliased(s))

    def _aliased(self, s):
        if isinstance(s, TAtom) and isinstance(s.arg, CodeLiteral):
            name = self._alias_of.get(s.arg.value)
            return TAtom(AliasRef(name)) if name is not None else s
        if isinstance(s, Not):
            return Not(self._aliased(s.inner))
        if isinstance(s, BINARY):
            return type(s)(self._aliased(s.left), self._aliased(s.right))
        return s

    def describe(self, code: int) -> str:
        name = self._alias_of.get(code)
        text = self.render(self.sentence(code))
        return f"{name} := {text}" if name else text

    # -- code sets

    def check_consistent(self, u: Iterable[int]) -> Consistency:
        """Consistent iff no #A and #[not A] are both in ``u``."""
        u = frozenset(u)
        for code in sorted(u):
            s = self.sentence(code)
            if isinstance(s, Not):
                positive = self.by_sentence.get(s.inner)
                if positive is not None and positive in u:
                    return Consistency(False, (positive, code))
        return Consistency(True)

    def conflicts(self, codes: Iterable[int]) -> list[tuple[int, int]]:
        """All pairs (#A, #[not A]) with both codes in ``codes``."""
        codes = frozenset(codes)
        out = []
        for code in sorted(codes):
            s = self.by_code[code]
            if isinstance(s, Not):
                positive = self.by_sentence.get(s.inner)
                if positive in codes:
                    out.append((positive, code))
        return out

    def referenced_closure(self, seeds: Iterable[Sentence]) -> tuple[Sentence, ...]:
        """Smallest superset of ``seeds`` closed under subformulas and T-references.

        For every ``T(#n)`` reached, both the sentence coded by n and its
        negation join the set (and get registered).  Result ordered by code.
        """
        todo = deque(self.resolve(s) for s in seeds)
        seen: set = set()
        while todo:
            s = todo.popleft()
            if s in seen:
                continue
            seen.add(s)
            self.register(s)
            for sub in subformula_list(s):
                if sub not in seen:
                    todo.append(sub)
                if isinstance(sub, TAtom):
                    target = self.sentence(sub.arg.value)
                    todo.append(target)
                    todo.append(Not(target))
        return tuple(sorted(seen, key=self.by_sentence.__getitem__))


@dataclass(frozen=True)
class Universe:
    """A finite set of registered sentences closed under ``referenced_closure``."""

    sentences: tuple
    codes: frozenset

    @classmethod
    def of(cls, reg: CodeRegistry, sentences: Iterable[Sentence]) -> "Universe":
        sentences = tuple(sorted({reg.resolve(s) for s in sentences},
                                 key=lambda s: _code_or_fail(reg, s)))
        closed = frozenset(sentences)
        for s in sentences:
            for sub in subformulas(s):
                if sub not in closed:
                    raise CodingError(f"universe not closed: missing subformula {reg.render(sub)}")
                if isinstance(sub, TAtom):
                    target = reg.sentence(sub.arg.value)
                    for need in (target, Not(target)):
                        if need not in closed:
                            raise CodingError(
                                f"universe not closed: {reg.render(sub)} needs {reg.render(need)}")
        return cls(sentences, frozenset(reg.by_sentence[s] for s in sentences))

    @classmethod
    def closure(cls, reg: CodeRegistry, seeds: Iterable[Sentence]) -> "Universe":
        return cls.of(reg, reg.referenced_closure(seeds))

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _code_or_fail(reg, s):
    code = reg.by_sentence.get(s)
    if code is None:
        raise CodingError(f"sentence not registered: {unparse(s)}")
    return code


# ------------------------------------------------------- definitions files

class DefinitionsError(ValueError):
    pass


_DEF = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_']*)\s*:=\s*(.+?)\s*$")
_COMMENT = re.compile(r"(^|\s)#(?!\d)")


def _strip_comment(line: str) -> str:
    m = _COMMENT.search(line)
    return line if m is None else line[:m.start()]


def _aliases_in(s: Sentence) -> set:
    return {n.arg.name for n in walk(s) if isinstance(n, TAtom) and isinstance(n.arg, AliasRef)}


def _rename(s: Sentence, rep: dict) -> Sentence:
    if isinstance(s, TAtom) and isinstance(s.arg, AliasRef):
        return TAtom(AliasRef(rep[s.arg.name]))
    if isinstance(s, Not):
        return Not(_rename(s.inner, rep))
    if isinstance(s, BINARY):
        return type(s)(_rename(s.left, rep), _rename(s.right, rep))
    return s


def load_definitions(text: str, source: str = "<defs>",
                     reg: Optional[CodeRegistry] = None) -> tuple[CodeRegistry, list[str]]:
    """Load ``name := sentence`` lines into a registry.

    Any name may be used under T before its definition line.  Names whose
    definitions become identical once synonymous names are identified
    share one code, keeping the numbering injective.  Returns the registry
    and the defined names in file order.
    """
    reg = reg if reg is not None else CodeRegistry()
    bodies: dict[str, Sentence] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = _DEF.match(line)
        if m is None:
            raise DefinitionsError(f"{source}:{lineno}: expected 'name := sentence'")
        name, body = m.groups()
        if name in bodies:
            raise DefinitionsError(f"{source}:{lineno}: {name!r} defined twice")
        try:
            bodies[name] = parse(body)
        except SentenceError as exc:
            raise DefinitionsError(f"{source}:{lineno}: {exc}") from None
        lines[name] = lineno
    for name, body in bodies.items():
        missing = sorted(_aliases_in(body) - bodies.keys() - reg.aliases.keys())
        if missing:
            raise DefinitionsError(
                f"{source}:{lines[name]}: undefined alias {missing[0]!r}")

    names = list(bodies)
    rep = {n: n for n in names}
    while True:
        first: dict[Sentence, str] = {}
        changed = False
        for n in names:
            key = _rename(bodies[n], rep)
            target = first.setdefault(key, rep[n])
            old = rep[n]
            if old != target:
                for k, v in list(rep.items()):
                    if v == old:
                        rep[k] = target
                changed = True
        if not changed:
            break

    try:
        for n in names:
            if rep[n] == n:
                reg.declare_alias(n)
        for n in names:
            if rep[n] != n:
                reg.add_synonym(n, reg.aliases[rep[n]])
        for n in names:
            if rep[n] == n:
                reg.register(bodies[n], alias=n)
    except (CodingError, SentenceError) as exc:
        raise DefinitionsError(f"{source}: {exc}") from None
    return reg, names
