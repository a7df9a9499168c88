"""Glue formulas: atoms ``S ~τ M`` combined with tensor, linear implication
and universal quantification over meaning terms or semantic structures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..meaning.syntax import format_term
from ..meaning.terms import Arrow, GlueVar, Term
from ..structures import SigmaNode

# ---------------------------------------------------------------- f- and σ-terms


@dataclass(frozen=True)
class Up:
    """The ``↑`` metavariable."""

    def __str__(self):
        return "^"


@dataclass(frozen=True)
class FLabel:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FSelect:
    base: "FTerm"
    attr: str

    def __str__(self):
        return f"({self.base} {self.attr})"


FTerm = Union[Up, FLabel, FSelect]


@dataclass(frozen=True)
class Proj:
    """Semantic projection ``s(F)``."""

    fterm: FTerm

    def __str__(self):
        return f"s({self.fterm})"


@dataclass(frozen=True)
class Select:
    base: "SemTerm"
    attr: str

    def __str__(self):
        return f"({self.base} {self.attr})"


@dataclass(frozen=True)
class HVar:
    """Glue variable ranging over semantic structures."""

    name: str

    def __str__(self):
        return self.name


SemTerm = Union[Proj, Select, HVar, SigmaNode]


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Assert:
    sem: SemTerm
    type: object
    meaning: Term

    def __str__(self):
        return format_glue(self)


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_glue(self)


@dataclass(frozen=True)
class Lollipop:
    antecedent: "Formula"
    consequent: "Formula"

    def __str__(self):
        return format_glue(self)


@dataclass(frozen=True)
class ForallM:
    var: str
    type: object
    body: "Formula"

    def __str__(self):
        return format_glue(self)


@dataclass(frozen=True)
class ForallS:
    var: str
    body: "Formula"

    def __str__(self):
        return format_glue(self)


Formula = Union[Assert, Tensor, Lollipop, ForallM, ForallS]
Binder = Union[ForallM, ForallS]


def strip_foralls(f: Formula) -> tuple[list[Binder], Formula]:
    binders = []
    while isinstance(f, (ForallM, ForallS)):
        binders.append(f)
        f = f.body
    return binders, f


def conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Tensor):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def tensor(parts: list[Formula]) -> Formula:
    result = parts[0]
    for p in parts[1:]:
        result = Tensor(result, p)
    return result


def atoms(f: Formula):
    """Every atom of ``f``, left to right."""
    match f:
        case Assert():
            yield f
        case Tensor(a, b) | Lollipop(a, b):
            yield from atoms(a)
            yield from atoms(b)
        case ForallM(_, _, body) | ForallS(_, body):
            yield from atoms(body)


def map_atoms(f: Formula, fn) -> Formula:
    match f:
        case Assert():
            return fn(f)
        case Tensor(a, b):
            return Tensor(map_atoms(a, fn), map_atoms(b, fn))
        case Lollipop(a, b):
            return Lollipop(map_atoms(a, fn), map_atoms(b, fn))
        case ForallM(v, ty, body):
            return ForallM(v, ty, map_atoms(body, fn))
        case ForallS(v, body):
            return ForallS(v, map_atoms(body, fn))
    raise TypeError(f"not a glue formula: {f!r}")


# ---------------------------------------------------------------- fragment


class FragmentError(ValueError):
    """Formula outside the tensor fragment; ``subformula`` is the culprit."""

    def __init__(self, subformula: Formula, reason: str):
        self.kind = "outside-fragment"
        self.subformula = subformula
        super().__init__(f"outside-fragment: {reason}: {format_glue(subformula)}")


def check_fragment(f: Formula) -> None:
    """Accept atoms and ``∀-prefix. C1 * ... * Cn -o A1 * ... * Am``
    where each ``Ci`` is an atom or ``∀x. atom -o atom`` and each ``Aj``
    is an atom.  Raises ``FragmentError``."""
    _, body = strip_foralls(f)
    if isinstance(body, Assert):
        return
    if not isinstance(body, Lollipop):
        raise FragmentError(body, "top level must be an atom or an implication")
    for conj in conjuncts(body.antecedent):
        if isinstance(conj, Assert):
            continue
        binders, inner = strip_foralls(conj)
        if any(isinstance(b, ForallS) for b in binders):
            raise FragmentError(conj, "nested quantification over semantic structures")
        if not (
            isinstance(inner, Lollipop)
            and isinstance(inner.antecedent, Assert)
            and isinstance(inner.consequent, Assert)
        ):
            raise FragmentError(conj, "nested implications must have the form ∀x. atom -o atom")
    for conj in conjuncts(body.consequent):
        if not isinstance(conj, Assert):
            raise FragmentError(conj, "consequents must be atoms or tensors of atoms")


# ---------------------------------------------------------------- printing


def format_type_index(ty) -> str:
    return f"({ty})" if isinstance(ty, Arrow) else str(ty)


def format_glue(f: Formula) -> str:
    """ASCII concrete syntax; readable back with ``parse_glue``."""
    return _show(f, 0)


# precedence: 0 = forall / -o position, 1 = operand of -o, 2 = operand of *
def _show(f, prec) -> str:
    match f:
        case Assert(sem, ty, meaning):
            return f"{sem} ~{format_type_index(ty)} {format_term(meaning, canonical=False)}"
        case Tensor(a, b):
            text = f"{_show(a, 2)} * {_show(b, 2)}"
            return f"({text})" if prec > 2 else text
        case Lollipop(a, b):
            text = f"{_show(a, 1)} -o {_show(b, 0)}"
            return f"({text})" if prec > 0 else text
        case ForallM() | ForallS():
            binders, body = strip_foralls(f)
            names = []
            for b in binders:
                if isinstance(b, ForallM) and b.type is not None:
                    names.append(f"{b.var}:{format_type_index(b.type)}")
                else:
                    names.append(b.var)
            text = f"forall {', '.join(names)}. {_show(body, 0)}"
            return f"({text})" if prec > 0 else text
    raise TypeError(f"not a glue formula: {f!r}")


def free_glue_names(f: Formula) -> set[str]:
    """Names of glue variables (meaning or σ) not bound inside ``f``."""
    match f:
        case Assert(sem, _, meaning):
            names = {v.name for v in _meaning_glue(meaning)}
            if isinstance(sem, HVar):
                names.add(sem.name)
            return names
        case Tensor(a, b) | Lollipop(a, b):
            return free_glue_names(a) | free_glue_names(b)
        case ForallM(v, _, body) | ForallS(v, body):
            return free_glue_names(body) - {v}
    raise TypeError(f"not a glue formula: {f!r}")


def _meaning_glue(term):
    from ..meaning.terms import glue_vars

    return glue_vars(term)


def is_eigen_free(f: Formula) -> bool:
    return not any(
        isinstance(v, GlueVar) and v.is_eigen for a in atoms(f) for v in _meaning_glue(a.meaning)
    )
