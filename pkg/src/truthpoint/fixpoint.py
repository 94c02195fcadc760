"""Fixed points of the restricted operator on a finite universe.

Every construction here iterates ``restricted_G`` to stabilisation.  On a
finite lattice the transfinite stages of the general construction never
get past a successor step: the union of G over all earlier stages of a
monotone chain is just G of the last stage.  Stages are therefore numbered
0, 1, 2, ... and the last stage is the answer.

The operator is G restricted to the codes of a universe closed under
``referenced_closure``.  On such a universe every sign computed for a
member depends only on codes inside the universe, so the restricted fixed
points are exactly the traces of the unrestricted ones on those codes, up
to the two quantified T sentences (see ``operator.quantified_T_sign``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coding import CodeRegistry, TruthSet, Universe
from .model import BaseModel
from .operator import Sign, Trace, explain, restricted_G, sign

DEFAULT_BOUND = 16

VERDICT = {Sign.IN_G: "true", Sign.IN_F: "false", Sign.NEITHER: "ungrounded", Sign.BOTH: "both"}


class FixpointError(ValueError):
    pass


class InconsistentSet(FixpointError):
    def __init__(self, witness: tuple[int, int], reg: CodeRegistry):
        self.witness = witness
        a, na = witness
        super().__init__(f"set is inconsistent: contains #{a} ({reg.describe(a)}) "
                         f"and #{na} ({reg.describe(na)})")


class UnsoundSeed(FixpointError):
    def __init__(self, code: int, trace: Trace, reg: CodeRegistry):
        self.code = code
        self.trace = trace
        super().__init__(f"seed is not sound: #{code} ({reg.describe(code)}) is not in G(seed)\n"
                         + trace.render(reg))


class UniverseTooLarge(FixpointError):
    pass


@dataclass(frozen=True)
class IterationTrace:
    stages: tuple          # of TruthSet, stages[0] is the seed
    kind: str              # "increasing" or "decreasing"

    @property
    def converged_at(self) -> int:
        return len(self.stages) - 1

    @property
    def last(self) -> TruthSet:
        return self.stages[-1]


@dataclass
class FixedPointReport:
    fixed_point: TruthSet
    universe: Universe
    trace: IterationTrace
    classification: dict = field(default_factory=dict)   # Sentence -> verdict
    full_semantics: bool = False


def classify(m: BaseModel, reg: CodeRegistry, u: TruthSet, universe: Universe,
             full_semantics: bool = False) -> dict:
    """Verdict per tracked sentence: true (in G), false (in F) or ungrounded."""
    return {a: VERDICT[sign(m, reg, u, a, full_semantics)] for a in universe}


def _require_consistent(reg, u):
    result = reg.check_consistent(u)
    if not result:
        raise InconsistentSet(result.witness, reg)


def _iterate_up(m, reg, universe, seed, full) -> IterationTrace:
    stages = [frozenset(seed)]
    while True:
        nxt = restricted_G(m, reg, stages[-1], universe, full)
        if nxt == stages[-1]:
            return IterationTrace(tuple(stages), "increasing")
        stages.append(nxt)


def _report(m, reg, universe, trace, full) -> FixedPointReport:
    fp = trace.last
    return FixedPointReport(fp, universe, trace, classify(m, reg, fp, universe, full), full)


def lfp(m: BaseModel, reg: CodeRegistry, universe: Universe,
        full_semantics: bool = False) -> FixedPointReport:
    """Least fixed point, by iterating from the empty set."""
    trace = _iterate_up(m, reg, universe, frozenset(), full_semantics)
    return _report(m, reg, universe, trace, full_semantics)


def extend_from_sound(m: BaseModel, reg: CodeRegistry, universe: Universe, v: Iterable[int],
                      full_semantics: bool = False) -> FixedPointReport:
    """Smallest fixed point containing a sound, consistent seed ``v``."""
    v = frozenset(v)
    _require_consistent(reg, v)
    image = restricted_G(m, reg, v, universe, full_semantics)
    missing = sorted(v - image)
    if missing:
        code = missing[0]
        raise UnsoundSeed(code, explain(m, reg, v, reg.sentence(code), full_semantics), reg)
    trace = _iterate_up(m, reg, universe, v, full_semantics)
    return _report(m, reg, universe, trace, full_semantics)


def greatest_sound_subset(m: BaseModel, reg: CodeRegistry, universe: Universe,
                          w: Iterable[int], full_semantics: bool = False):
    """Greatest V with V = w ∩ G(V); returns ``(V, trace)``.

    V_0 = w and V_{n+1} = w ∩ G(V_n) while V_n differs from w ∩ G(V_n).
    """
    w = frozenset(w)
    _require_consistent(reg, w)
    stages = [w]
    while True:
        nxt = w & restricted_G(m, reg, stages[-1], universe, full_semantics)
        if nxt == stages[-1]:
            return nxt, IterationTrace(tuple(stages), "decreasing")
        stages.append(nxt)


def consistent_subsets(reg: CodeRegistry, codes: Iterable[int]):
    """Yield every consistent subset of ``codes`` (each exactly once)."""
    codes = sorted(codes)
    clash: dict[int, set] = {c: set() for c in codes}
    for a, na in reg.conflicts(codes):
        clash[a].add(na)
        clash[na].add(a)

    def grow(i, chosen):
        if i == len(codes):
            yield frozenset(chosen)
            return
        yield from grow(i + 1, chosen)
        c = codes[i]
        if not clash[c] & chosen:
            chosen.add(c)
            yield from grow(i + 1, chosen)
            chosen.discard(c)

    yield from grow(0, set())


def enumerate_fixed_points(m: BaseModel, reg: CodeRegistry, universe: Universe,
                           bound: int = DEFAULT_BOUND,
                           full_semantics: bool = False) -> list:
    """All consistent u with u = restricted_G(u), by exhaustive search.

    Sorted by size, then by code list.
    """
    if len(universe) > bound:
        raise UniverseTooLarge(f"universe has {len(universe)} sentences; "
                               f"exhaustive search is limited to {bound}")
    found = [u for u in consistent_subsets(reg, universe.codes)
             if restricted_G(m, reg, u, universe, full_semantics) == u]
    return sorted(found, key=lambda u: (len(u), sorted(u)))


def report_for(m: BaseModel, reg: CodeRegistry, universe: Universe, u: TruthSet,
               full_semantics: bool = False) -> FixedPointReport:
    """Wrap a known fixed point (e.g. from enumeration) as a report."""
    u = frozenset(u)
    if restricted_G(m, reg, u, universe, full_semantics) != u:
        raise FixpointError(f"{sorted(u)} is not a fixed point")
    trace = IterationTrace((u,), "increasing")
    return _report(m, reg, universe, trace, full_semantics)


def maximal(points: list) -> list:
    """The ⊆-maximal members of a list of sets."""
    return [p for p in points if not any(p < q for q in points)]
