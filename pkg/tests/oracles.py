"""Reference implementations that share no code with the library paths they check."""
from __future__ import annotations

from itertools import chain, combinations

from truthpoint.syntax import (
    And, Equality, Exists, Forall, Iff, Implies, Membership, ModelConst, Not, Or, Var,
)


def powerset(xs):
    xs = list(xs)
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


def hf_sets(rank):
    """V_rank as Python frozensets: V_0 = {}, V_{k+1} = P(V_k)."""
    level = []
    for _ in range(rank):
        level = [frozenset(s) for s in powerset(level)]
    return level


def hf_consts():
    zero = frozenset()
    one = frozenset([zero])
    two = frozenset([zero, one])
    return {"e": zero, "n0": zero, "n1": one, "n2": two}


def to_python(s) -> str:
    """Compile a T-free sentence to a Python expression over `dom`, `mem`, `c`."""
    def term(t):
        if isinstance(t, Var):
            return "v_" + t.name
        if isinstance(t, ModelConst):
            return f"c[{t.name!r}]"
        raise TypeError(t)

    if isinstance(s, Membership):
        return f"mem({term(s.lhs)}, {term(s.rhs)})"
    if isinstance(s, Equality):
        return f"({term(s.lhs)} == {term(s.rhs)})"
    if isinstance(s, Not):
        return f"(not {to_python(s.inner)})"
    if isinstance(s, Or):
        return f"({to_python(s.left)} or {to_python(s.right)})"
    if isinstance(s, And):
        return f"({to_python(s.left)} and {to_python(s.right)})"
    if isinstance(s, Implies):
        return f"((not {to_python(s.left)}) or {to_python(s.right)})"
    if isinstance(s, Iff):
        return f"({to_python(s.left)} == {to_python(s.right)})"
    if isinstance(s, Exists):
        return f"any({to_python(s.body)} for v_{s.var} in dom)"
    if isinstance(s, Forall):
        return f"all({to_python(s.body)} for v_{s.var} in dom)"
    raise TypeError(s)


def naive_truth(s, dom, mem, consts) -> bool:
    return bool(eval(to_python(s), {"dom": dom, "mem": mem, "c": consts}))


def hf_truth(s, rank=4) -> bool:
    """Truth of a T-free sentence in V_rank, using Python's own set membership."""
    return naive_truth(s, hf_sets(rank), lambda a, b: a in b, hf_consts())


def brute_fixed_points(m, reg, universe, op):
    """Every consistent subset u of the universe codes with op(u) == u.

    Scans all 2^n subsets and filters by the definition of consistency.
    """
    codes = sorted(universe.codes)
    out = []
    for combo in powerset(codes):
        u = frozenset(combo)
        if _consistent(reg, u) and op(u) == u:
            out.append(u)
    return out


def brute_sound_subsets(reg, universe, op, within=None):
    codes = sorted(universe.codes if within is None else within)
    out = []
    for combo in powerset(codes):
        u = frozenset(combo)
        if _consistent(reg, u) and u <= op(u):
            out.append(u)
    return out


def _consistent(reg, u):
    for c in u:
        s = reg.by_code[c]
        neg = reg.by_sentence.get(Not(s))
        if neg is not None and neg in u:
            return False
    return True
