"""A workspace is a base model plus a file of named definitions."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .coding import CodeRegistry, Universe, load_definitions
from .model import BaseModel, default_model, load_model
from .syntax import Not, Sentence, parse

_NAME = re.compile(r'^"?([A-Za-z_][A-Za-z0-9_\']*)"?$')


@dataclass
class Workspace:
    model: BaseModel
    registry: CodeRegistry
    names: list

    @classmethod
    def from_text(cls, defs: str = "", model: Optional[str] = None, rank: int = 4,
                  source: str = "<defs>") -> "Workspace":
        m = load_model(model) if model is not None else default_model(rank)
        reg, names = load_definitions(defs, source)
        return cls(m, reg, names)

    @classmethod
    def load(cls, defs_path=None, model_path=None, rank: int = 4) -> "Workspace":
        """Read files; a missing default-named file means empty defs / synthesized model."""
        defs_text = ""
        source = "<defs>"
        if defs_path is not None:
            defs_path = Path(defs_path)
            defs_text = defs_path.read_text()
            source = str(defs_path)
        m = default_model(rank)
        if model_path is not None:
            model_path = Path(model_path)
            m = load_model(model_path.read_text(), str(model_path))
        reg, names = load_definitions(defs_text, source)
        return cls(m, reg, names)

    def definition(self, name: str) -> Sentence:
        return self.registry.sentence(self.registry.aliases[name])

    @property
    def definitions(self) -> list:
        return [self.definition(n) for n in self.names]

    def query(self, text: str) -> Sentence:
        """An alias name (optionally quoted) or a sentence in the concrete grammar."""
        m = _NAME.match(text.strip())
        if m and m.group(1) in self.registry.aliases:
            return self.definition(m.group(1))
        return self.registry.resolve(parse(text))

    def codes(self, names: Iterable[str]) -> frozenset:
        return frozenset(self.registry.register(self.query(n)) for n in names)

    def universe(self, extra: Iterable[Sentence] = ()) -> Universe:
        """Referenced closure of all definitions and ``extra``, plus their negations."""
        seeds = []
        for s in [*self.definitions, *extra]:
            s = self.registry.resolve(s)
            seeds += [s, Not(s)]
        return Universe.closure(self.registry, seeds)
