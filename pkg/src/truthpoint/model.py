"""Finite ∈-structures and classical evaluation of T-free sentences."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .syntax import (
    And, Equality, Exists, Forall, Iff, Implies, Membership, ModelConst, Not, Or,
    Sentence, Var, is_pure, unparse,
)

MAX_RANK = 5


class ModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BaseModel:
    """A finite set of elements with an arbitrary membership relation.

    ``members[b]`` is the set of elements ``a`` with ``a ∈ b``.  Models
    compare by identity so they can key evaluation caches.
    """

    elements: tuple[str, ...]
    members: Mapping[str, frozenset] = field(repr=False)
    consts: Mapping[str, str]

    def __post_init__(self):
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise ModelError("duplicate element ids")
        for name, elem in self.consts.items():
            if elem not in known:
                raise ModelError(f"constant {name!r} names unknown element {elem!r}")
        for container, contents in self.members.items():
            if container not in known or not contents <= known:
                raise ModelError(f"membership mentions unknown elements under {container!r}")

    @classmethod
    def from_relation(cls, elements: Iterable[str], membership: Iterable[tuple[str, str]],
                      consts: Mapping[str, str]) -> "BaseModel":
        elements = tuple(elements)
        known = set(elements)
        buckets: dict[str, set] = {e: set() for e in elements}
        for a, b in membership:
            if a not in known or b not in known:
                raise ModelError(f"membership ({a}, {b}) mentions an unknown element")
            buckets[b].add(a)
        return cls(elements, {b: frozenset(s) for b, s in buckets.items()}, dict(consts))

    @property
    def membership(self) -> frozenset:
        return frozenset((a, b) for b in self.elements for a in self.members.get(b, ()))

    def is_member(self, a: str, b: str) -> bool:
        return a in self.members.get(b, ())


def default_model(rank: int = 4) -> BaseModel:
    """The hereditarily finite sets of rank below ``rank`` (V_rank).

    Elements are numbered by the Ackermann coding, so ``a ∈ b`` iff bit
    ``a`` of ``b`` is set and V_rank is exactly ``0 .. |V_rank| - 1``.
    Constants: ``e`` and ``n0`` for the empty set, ``n1`` and ``n2`` for
    the von Neumann numerals 1 and 2 when the rank admits them.
    """
    if not 1 <= rank <= MAX_RANK:
        raise ModelError(f"rank must be between 1 and {MAX_RANK}, got {rank}")
    size = 0
    for _ in range(rank):
        size = 2 ** size
    ids = [str(i) for i in range(size)]
    members = {
        ids[b]: frozenset(ids[a] for a in range(b.bit_length()) if b >> a & 1)
        for b in range(size)
    }
    consts = {"e": "0", "n0": "0"}
    if size > 1:
        consts["n1"] = "1"      # {0}
    if size > 3:
        consts["n2"] = "3"      # {0, 1}
    return BaseModel(tuple(ids), members, consts)


def load_model(text: str, source: str = "<model>") -> BaseModel:
    """Read the line format ``element <id>`` / ``member <a> <b>`` / ``const <name> <id>``.

    ``member a b`` states a ∈ b.  ``#`` starts a comment.
    """
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    consts: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"{source}:{lineno}"
        if parts[0] == "element" and len(parts) == 2:
            if parts[1] in elements:
                raise ModelError(f"{where}: duplicate element {parts[1]!r}")
            elements.append(parts[1])
        elif parts[0] == "member" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        elif parts[0] == "const" and len(parts) == 3:
            if parts[1] in consts:
                raise ModelError(f"{where}: duplicate constant {parts[1]!r}")
            consts[parts[1]] = parts[2]
        else:
            raise ModelError(f"{where}: cannot read {raw.strip()!r}")
    known = set(elements)
    for a, b in pairs:
        for x in (a, b):
            if x not in known:
                raise ModelError(f"{source}: member refers to undeclared element {x!r}")
    for name, x in consts.items():
        if x not in known:
            raise ModelError(f"{source}: constant {name!r} refers to undeclared element {x!r}")
    return BaseModel.from_relation(elements, pairs, consts)


@lru_cache(maxsize=65536)
def eval_L(m: BaseModel, s: Sentence) -> bool:
    """Classical truth value of a closed T-free sentence in ``m``."""
    if not is_pure(s):
        raise ValueError(f"eval_L is only defined on sentences without T: {unparse(s)}")
    return _holds(m, s, {})


def _value(m: BaseModel, t, env):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise ModelError(f"free variable {t.name!r}") from None
    if isinstance(t, ModelConst):
        try:
            return m.consts[t.name]
        except KeyError:
            raise ModelError(f"unbound constant {t.name!r}") from None
    raise ModelError(f"term {t!r} has no value in the base model")


def _holds(m, s, env) -> bool:
    if isinstance(s, Membership):
        return m.is_member(_value(m, s.lhs, env), _value(m, s.rhs, env))
    if isinstance(s, Equality):
        return _value(m, s.lhs, env) == _value(m, s.rhs, env)
    if isinstance(s, Not):
        return not _holds(m, s.inner, env)
    if isinstance(s, Or):
        return _holds(m, s.left, env) or _holds(m, s.right, env)
    if isinstance(s, And):
        return _holds(m, s.left, env) and _holds(m, s.right, env)
    if isinstance(s, Implies):
        return not _holds(m, s.left, env) or _holds(m, s.right, env)
    if isinstance(s, Iff):
        return _holds(m, s.left, env) == _holds(m, s.right, env)
    if isinstance(s, Exists):
        return any(_holds(m, s.body, {**env, s.var: x}) for x in m.elements)
    if isinstance(s, Forall):
        return all(_holds(m, s.body, {**env, s.var: x}) for x in m.elements)
    raise ValueError(f"not a T-free sentence: {s!r}")
