"""Search state shared by both provers: resources, σ-variable bindings and
instantiation of glue binders."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from ..glue.formulas import (
    Assert,
    Formula,
    ForallM,
    ForallS,
    HVar,
    Lollipop,
    Tensor,
    atoms,
    strip_foralls,
)
from ..meaning.terms import EIGEN, EXISTENTIAL, glue_vars, mentions, subst_glue
from ..meaning.unify import Bindings, UnificationError


@dataclass(frozen=True)
class Resource:
    rid: int
    formula: Formula
    origin: str = ""


@dataclass(frozen=True)
class State:
    """Immutable unifier state: meaning bindings, σ-variable bindings and
    the next free resource id."""

    bindings: Bindings = field(default_factory=Bindings)
    sigma: Mapping[str, object] = field(default_factory=dict)
    next_rid: int = 0

    def new_rids(self, n: int) -> tuple[tuple[int, ...], "State"]:
        rids = tuple(range(self.next_rid, self.next_rid + n))
        return rids, replace(self, next_rid=self.next_rid + n)

    def resolve_sem(self, sem):
        while isinstance(sem, HVar) and sem.name in self.sigma:
            sem = self.sigma[sem.name]
        return sem

    def resolve_meaning(self, term):
        return self.bindings.resolve(term)

    def resolve_atom(self, atom: Assert) -> Assert:
        return Assert(self.resolve_sem(atom.sem), atom.type, self.resolve_meaning(atom.meaning))


def initial_state(premises, goal: Assert) -> State:
    """State in which the goal's free meaning variables are oldest."""
    births = {v.name: 0 for v in glue_vars(goal.meaning)}
    n = max((p.index for p in premises), default=-1) + 1
    return State(Bindings({}, births, 0), {}, n)


# ---------------------------------------------------------------- substitution


def subst_formula(f: Formula, meanings: Mapping[str, object], sems: Mapping[str, object]) -> Formula:
    """Replace free glue variables; binders shadow."""
    match f:
        case Assert(sem, ty, meaning):
            if isinstance(sem, HVar) and sem.name in sems:
                sem = sems[sem.name]
            return Assert(sem, ty, subst_glue(meaning, meanings))
        case Tensor(a, b):
            return Tensor(subst_formula(a, meanings, sems), subst_formula(b, meanings, sems))
        case Lollipop(a, b):
            return Lollipop(subst_formula(a, meanings, sems), subst_formula(b, meanings, sems))
        case ForallM(v, ty, body):
            inner = {k: x for k, x in meanings.items() if k != v}
            return ForallM(v, ty, subst_formula(body, inner, sems))
        case ForallS(v, body):
            inner = {k: x for k, x in sems.items() if k != v}
            return ForallS(v, subst_formula(body, meanings, inner))
    raise TypeError(f"not a glue formula: {f!r}")


def instantiate(binders, body: Formula, state: State):
    """Fresh existentials for ``binders``; returns ``(inst, body, state)``
    where ``inst`` lists ``(binder name, value)`` pairs in order."""
    b = state.bindings
    inst = []
    meanings, sems = {}, {}
    for binder in binders:
        if isinstance(binder, ForallS):
            var, b = b.fresh(binder.var, EXISTENTIAL, None)
            value = HVar(var.name)
            sems[binder.var] = value
        else:
            value, b = b.fresh(binder.var, EXISTENTIAL, binder.type)
            meanings[binder.var] = value
        inst.append((binder.var, value))
    return tuple(inst), subst_formula(body, meanings, sems), replace(state, bindings=b)


def open_hypothetical(conj: Formula, state: State):
    """Open ``∀x. A -o B``: fresh eigens for the binders.

    Returns ``(eigens, A, B, state)`` where ``eigens`` pairs each binder
    name with its eigenvariable.
    """
    binders, inner = strip_foralls(conj)
    b = state.bindings
    eigens = []
    meanings = {}
    for binder in binders:
        var, b = b.fresh(binder.var, EIGEN, binder.type)
        eigens.append((binder.var, var))
        meanings[binder.var] = var
    inner = subst_formula(inner, meanings, {})
    return tuple(eigens), inner.antecedent, inner.consequent, replace(state, bindings=b)


def is_hypothetical(conj: Formula) -> bool:
    _, inner = strip_foralls(conj)
    return isinstance(inner, Lollipop)


def discharge(eigens, ctx, state: State) -> State | None:
    """Close the scope of ``eigens``: fail if a leftover resource still
    mentions one of them, and stop younger unsolved existentials from
    ever receiving them."""
    names = {e.name for _, e in eigens}
    for r in ctx:
        for a in atoms(r.formula):
            if mentions(state.resolve_meaning(a.meaning), names):
                return None
    b = state.bindings
    floor = min(b.births[n] for n in names)
    young = [n for n, birth in b.births.items() if birth > floor and n not in b.subst and n not in names]
    return replace(state, bindings=b.lower(young, floor))


# ---------------------------------------------------------------- unification


def unify_sem(a, b, state: State) -> State | None:
    a, b = state.resolve_sem(a), state.resolve_sem(b)
    if a == b:
        return state
    if isinstance(a, HVar):
        return replace(state, sigma={**state.sigma, a.name: b})
    if isinstance(b, HVar):
        return replace(state, sigma={**state.sigma, b.name: a})
    return None


def unify_meaning(a, b, state: State) -> State | None:
    try:
        return replace(state, bindings=state.bindings.unify(a, b))
    except UnificationError:
        return None


def unify_atom(a: Assert, b: Assert, state: State) -> State | None:
    if a.type != b.type:
        return None
    state = unify_sem(a.sem, b.sem, state)
    if state is None:
        return None
    return unify_meaning(a.meaning, b.meaning, state)


def may_match(a: Assert, b: Assert, state: State) -> bool:
    """Cheap necessary condition for ``unify_atom`` to succeed."""
    if a.type != b.type:
        return False
    x, y = state.resolve_sem(a.sem), state.resolve_sem(b.sem)
    return x == y or isinstance(x, HVar) or isinstance(y, HVar)
