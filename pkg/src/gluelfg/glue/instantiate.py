"""Instantiating lexical glue templates at f-structure nodes."""

from __future__ import annotations

from dataclasses import dataclass

from ..meaning.terms import normalize
from ..structures import Analysis, Equation, NodeRef, SigmaNode, StructureError, get_path
from .formulas import (
    Assert,
    FLabel,
    Formula,
    FSelect,
    HVar,
    Proj,
    Select,
    Up,
    format_glue,
    map_atoms,
)
from .syntax import LexicalEntry


class InstantiationError(Exception):
    """A template refers to structure the analysis does not provide.

    ``kind`` is ``missing-function`` (an f-structure path is undefined),
    ``missing-attribute`` (a σ attribute such as ANT is unset) or
    ``unsupported`` (a selection below a σ-variable).
    """

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


@dataclass(frozen=True)
class Premise:
    index: int
    formula: Formula
    origin: str

    def __str__(self):
        return f"[{self.index}] {self.origin}: {format_glue(self.formula)}"


def resolve_fterm(fterm, node: str, analysis: Analysis) -> str:
    """Label of the f-structure node denoted by ``fterm`` with ``^`` = ``node``."""
    fs = analysis.fstructure
    match fterm:
        case Up():
            return fs.find(node)
        case FLabel(name):
            try:
                return fs.find(name)
            except StructureError as exc:
                raise InstantiationError("missing-function", str(exc)) from None
        case FSelect(base, attr):
            label = resolve_fterm(base, node, analysis)
            try:
                value = get_path(fs, label, [attr])
            except StructureError:
                raise InstantiationError(
                    "missing-function", f"({label} {attr}) is not defined"
                ) from None
            if not isinstance(value, NodeRef):
                raise InstantiationError("missing-function", f"({label} {attr}) is an atom, not a structure")
            return value.label
    raise TypeError(f"not an f-term: {fterm!r}")


def resolve_sem(sem, node: str, analysis: Analysis):
    match sem:
        case Proj(fterm):
            return analysis.sigma.project(resolve_fterm(fterm, node, analysis))
        case Select(base, attr):
            inner = resolve_sem(base, node, analysis)
            if isinstance(inner, HVar):
                raise InstantiationError("unsupported", f"selection {attr} below variable {inner.name}")
            try:
                return analysis.sigma.select(inner, attr)
            except StructureError as exc:
                raise InstantiationError(exc.kind, str(exc).split(": ", 1)[-1]) from None
        case HVar() | SigmaNode():
            return sem
    raise TypeError(f"not a semantic-structure term: {sem!r}")


def instantiate_formula(formula: Formula, node: str, analysis: Analysis) -> Formula:
    def inst(atom: Assert) -> Assert:
        return Assert(resolve_sem(atom.sem, node, analysis), atom.type, normalize(atom.meaning))

    return map_atoms(formula, inst)


def instantiate_entry(
    entry: LexicalEntry, node: str, analysis: Analysis, index: int = 0
) -> tuple[list[Equation], Premise]:
    """Replace ``^`` by ``node`` in the entry's equations and glue."""
    label = analysis.fstructure.find(node)
    equations = [e.substitute({"^": label}) for e in entry.equations]
    formula = instantiate_formula(entry.glue, label, analysis)
    return equations, Premise(index, formula, f"{entry.word}@{label}")
