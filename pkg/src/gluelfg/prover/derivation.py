"""Proof trees, readings, trace rendering and an independent replay checker.

A proof of an atomic goal is one of

* ``Axiom(rid)``: the goal is resource ``rid`` itself;
* ``Apply(rid, inst, antecedents, produced, then)``: resource ``rid`` is
  instantiated with ``inst``, each antecedent conjunct is proved in turn,
  the consequent atoms become new resources ``produced`` and ``then``
  proves the goal from what is left;
* ``Hypothesis(eigens, hypothesis, body)`` proves a nested implication
  ``∀x. A -o B`` by replacing each binder by its eigenvariable (``eigens``
  pairs binder names with them), adding ``A`` as resource ``hypothesis``
  and proving ``B``; it appears only among the antecedents of an ``Apply``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..glue.formulas import (
    Assert,
    ForallS,
    Formula,
    HVar,
    Lollipop,
    atoms,
    conjuncts,
    format_glue,
    strip_foralls,
)
from ..meaning.syntax import format_term
from ..meaning.terms import EIGEN, GlueVar, alpha_equal, glue_vars, mentions, normalize
from ..structures import SigmaNode
from .state import Resource, is_hypothetical, subst_formula


@dataclass(frozen=True)
class Axiom:
    rid: int


@dataclass(frozen=True)
class Hypothesis:
    eigens: tuple
    hypothesis: int
    body: "Proof"


@dataclass(frozen=True)
class Apply:
    rid: int
    inst: tuple
    antecedents: tuple
    produced: tuple[int, ...]
    then: "Proof"


Proof = Union[Axiom, Apply, Hypothesis]


@dataclass(frozen=True)
class Derivation:
    proof: Proof
    conclusion: Assert

    @property
    def meaning(self):
        return self.conclusion.meaning

    def trace(self) -> list[str]:
        return format_trace(self.proof)

    def consumed(self) -> list[int]:
        """Every resource id consumed, in proof order."""
        return list(_consumed(self.proof))


@dataclass(frozen=True)
class Reading:
    meaning: object
    derivation: Derivation
    goal: object

    @property
    def text(self) -> str:
        return format_term(self.meaning)

    def __str__(self):
        return self.text


# ---------------------------------------------------------------- resolution


def resolve_proof(proof: Proof, state) -> Proof:
    """Replace search variables in recorded instantiations by their values."""
    match proof:
        case Axiom():
            return proof
        case Hypothesis(eigens, hyp, body):
            return Hypothesis(eigens, hyp, resolve_proof(body, state))
        case Apply(rid, inst, ants, produced, then):
            inst = tuple((name, _resolve_value(v, state)) for name, v in inst)
            ants = tuple(resolve_proof(a, state) for a in ants)
            return Apply(rid, inst, ants, produced, resolve_proof(then, state))
    raise TypeError(proof)


def _resolve_value(value, state):
    if isinstance(value, (SigmaNode, HVar)):
        return state.resolve_sem(value)
    return state.resolve_meaning(value)


def _consumed(proof):
    match proof:
        case Axiom(rid):
            yield rid
        case Hypothesis(_, _, body):
            yield from _consumed(body)
        case Apply(rid, _, ants, _, then):
            yield rid
            for a in ants:
                yield from _consumed(a)
            yield from _consumed(then)


# ---------------------------------------------------------------- trace


def _show_value(v) -> str:
    if isinstance(v, (SigmaNode, HVar)):
        return str(v)
    return format_term(v)


def _show_subst(pairs) -> str:
    return "{" + ", ".join(f"{name} := {_show_value(v)}" for name, v in pairs) + "}"


def format_trace(proof: Proof) -> list[str]:
    """One line per inference step, in proof order."""
    lines: list[str] = []

    def emit(rule, rid, pairs=()):
        lines.append(f"step {len(lines) + 1}: {rule} resource={rid} subst={_show_subst(pairs)}")

    def walk(p):
        match p:
            case Axiom(rid):
                emit("axiom-match", rid)
            case Hypothesis(eigens, hyp, body):
                emit("hypothetical-intro", hyp, eigens)
                walk(body)
            case Apply(rid, inst, ants, _, then):
                if inst:
                    emit("universal-instantiation", rid, inst)
                emit("tensor-split" if len(ants) >= 2 else "backchain", rid)
                for a in ants:
                    walk(a)
                walk(then)

    walk(proof)
    return lines


# ---------------------------------------------------------------- replay


@dataclass
class ReplayResult:
    ok: bool
    step: int = 0
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"step {self.step}: {self.reason}"


class _Fail(Exception):
    pass


@dataclass
class _Replayer:
    used: set = field(default_factory=set)
    eigens: set = field(default_factory=set)
    step: int = 0

    def fail(self, reason):
        raise _Fail(reason)

    def take(self, ctx, rid):
        for i, r in enumerate(ctx):
            if r.rid == rid:
                return r, ctx[:i] + ctx[i + 1 :]
        self.fail(f"resource {rid} is not available")

    def fresh_rid(self, rid):
        if rid in self.used:
            self.fail(f"resource id {rid} is reused")
        self.used.add(rid)

    def prove(self, proof, goal: Assert, ctx: tuple) -> tuple:
        self.step += 1
        match proof:
            case Axiom(rid):
                r, ctx = self.take(ctx, rid)
                if not isinstance(r.formula, Assert):
                    self.fail(f"resource {rid} is not an atom")
                if not _same_atom(r.formula, goal):
                    self.fail(f"resource {rid} ({format_glue(r.formula)}) does not match {format_glue(goal)}")
                return ctx
            case Apply(rid, inst, ants, produced, then):
                r, ctx = self.take(ctx, rid)
                binders, body = strip_foralls(r.formula)
                if [b.var for b in binders] != [name for name, _ in inst]:
                    self.fail(f"instantiation of resource {rid} does not match its binders")
                meanings, sems = {}, {}
                for (n, v), b in zip(inst, binders):
                    if isinstance(b, ForallS):
                        if not isinstance(v, SigmaNode):
                            self.fail(f"{n} is not instantiated to a semantic structure")
                        sems[n] = v
                    else:
                        meanings[n] = v
                body = subst_formula(body, meanings, sems)
                if isinstance(body, Lollipop):
                    conj, cons = conjuncts(body.antecedent), conjuncts(body.consequent)
                else:
                    conj, cons = [], [body]
                if len(conj) != len(ants):
                    self.fail(f"resource {rid} has {len(conj)} antecedents, proof gives {len(ants)}")
                for c, a in zip(conj, ants):
                    ctx = self.prove_conjunct(a, c, ctx)
                if len(produced) != len(cons):
                    self.fail(f"resource {rid} produces {len(cons)} atoms, proof records {len(produced)}")
                for new, atom in zip(produced, cons):
                    self.fresh_rid(new)
                    ctx = ctx + (Resource(new, atom),)
                return self.prove(then, goal, ctx)
            case Hypothesis():
                self.fail("hypothetical step used for an atomic goal")
        self.fail(f"unknown proof node {proof!r}")

    def prove_conjunct(self, proof, conj, ctx):
        if not is_hypothetical(conj):
            return self.prove(proof, conj, ctx)
        self.step += 1
        if not isinstance(proof, Hypothesis):
            self.fail("nested implication not proved hypothetically")
        binders, inner = strip_foralls(conj)
        if len(binders) != len(proof.eigens):
            self.fail("wrong number of eigenvariables")
        mapping = {}
        for b, (name, e) in zip(binders, proof.eigens):
            if name != b.var:
                self.fail(f"eigenvariable recorded for {name}, binder is {b.var}")
            if not (isinstance(e, GlueVar) and e.kind == EIGEN) or e.name in self.eigens:
                self.fail(f"{e} is not a fresh eigenvariable")
            if any(mentions_formula(r.formula, {e.name}) for r in ctx):
                self.fail(f"eigenvariable {e.name} already occurs in the context")
            self.eigens.add(e.name)
            mapping[b.var] = e
        inner = subst_formula(inner, mapping, {})
        self.fresh_rid(proof.hypothesis)
        hyp = Resource(proof.hypothesis, inner.antecedent)
        out = self.prove(proof.body, inner.consequent, ctx + (hyp,))
        if any(r.rid == proof.hypothesis for r in out):
            self.fail(f"hypothesis {proof.hypothesis} is not consumed")
        names = {e.name for _, e in proof.eigens}
        if any(mentions_formula(r.formula, names) for r in out):
            self.fail("an eigenvariable escapes its hypothetical sub-proof")
        return out


def mentions_formula(f: Formula, names) -> bool:
    return any(mentions(a.meaning, names) for a in atoms(f))


def _same_atom(a: Assert, b: Assert) -> bool:
    return (
        a.sem == b.sem
        and a.type == b.type
        and alpha_equal(normalize(a.meaning), normalize(b.meaning))
    )


def replay(derivation: Derivation, premises, goal: Assert) -> ReplayResult:
    """Re-run ``derivation`` against ``premises``.

    Succeeds iff every step applies, each resource is consumed exactly
    once, and the result is ``goal`` with the derivation's meaning.
    """
    conclusion = derivation.conclusion
    if conclusion.sem != goal.sem or conclusion.type != goal.type:
        return ReplayResult(False, 0, "conclusion is not about the goal structure")
    if glue_vars(conclusion.meaning):
        return ReplayResult(False, 0, "conclusion still contains glue variables")
    ctx = tuple(Resource(p.index, p.formula, p.origin) for p in premises)
    r = _Replayer(used={p.index for p in premises})
    if len(r.used) != len(ctx):
        return ReplayResult(False, 0, "premise indices are not distinct")
    try:
        out = r.prove(derivation.proof, conclusion, ctx)
    except _Fail as exc:
        return ReplayResult(False, r.step, str(exc))
    if out:
        return ReplayResult(False, r.step, f"resources left unconsumed: {[x.rid for x in out]}")
    return ReplayResult(True, r.step)
