"""Goal-directed proof search with input/output resource threading.

An atomic goal is closed either by an available atom or by backchaining on
an implication whose consequent contains a matching atom.  Antecedent
conjuncts are proved left to right; each proof receives the resources
left over by the previous one, so the context is split lazily instead of
by enumerating partitions.  Consequent atoms other than the one used are
returned to the context as new resources.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from ..glue.formulas import Assert, Lollipop, conjuncts, strip_foralls
from .derivation import Apply, Axiom, Derivation, Hypothesis, resolve_proof
from .state import (
    Resource,
    State,
    discharge,
    initial_state,
    instantiate,
    is_hypothetical,
    may_match,
    open_hypothetical,
    unify_atom,
    unify_meaning,
    unify_sem,
)


@dataclass
class SearchStats:
    """Why a search did or did not succeed.

    ``unconsumed`` counts proofs of the goal that left resources over (a
    coherence failure); when no proof of the goal exists at all the goal
    is unsatisfiable (a completeness failure).
    """

    proofs: int = 0
    unconsumed: int = 0
    steps: int = 0

    @property
    def diagnosis(self) -> str:
        if self.proofs:
            return "ok"
        if self.unconsumed:
            return "unconsumed-resources"
        return "unsatisfiable-goal"


@dataclass
class _Search:
    stats: SearchStats = field(default_factory=SearchStats)

    def atom(self, goal: Assert, ctx: tuple, st: State) -> Iterator:
        for i, r in enumerate(ctx):
            rest = ctx[:i] + ctx[i + 1 :]
            binders, body = strip_foralls(r.formula)
            if isinstance(body, Assert):
                if not may_match(body, goal, st):
                    continue
                self.stats.steps += 1
                if not binders:
                    st2 = unify_atom(body, goal, st)
                    if st2 is not None:
                        yield Axiom(r.rid), rest, st2
                    continue
                inst, body, st1 = instantiate(binders, body, st)
                (new,), st1 = st1.new_rids(1)
                st2 = unify_atom(body, goal, st1)
                if st2 is not None:
                    yield Apply(r.rid, inst, (), (new,), Axiom(new)), rest, st2
                continue
            for k, c in enumerate(conjuncts(body.consequent)):
                if may_match(c, goal, st):
                    yield from self.backchain(r, k, goal, rest, st)

    def backchain(self, r: Resource, k: int, goal: Assert, rest: tuple, st: State):
        self.stats.steps += 1
        binders, body = strip_foralls(r.formula)
        inst, body, st = instantiate(binders, body, st)
        assert isinstance(body, Lollipop)
        cons = conjuncts(body.consequent)
        st = unify_sem(cons[k].sem, goal.sem, st)
        if st is None:
            return
        for ants, ctx, st2 in self.conjuncts(conjuncts(body.antecedent), rest, st):
            st3 = unify_meaning(cons[k].meaning, goal.meaning, st2)
            if st3 is None:
                continue
            produced, st3 = st3.new_rids(len(cons))
            released = tuple(Resource(rid, a) for j, (rid, a) in enumerate(zip(produced, cons)) if j != k)
            proof = Apply(r.rid, inst, tuple(ants), produced, Axiom(produced[k]))
            yield proof, ctx + released, st3

    def conjuncts(self, conjs: list, ctx: tuple, st: State):
        if not conjs:
            yield [], ctx, st
            return
        first, rest = conjs[0], conjs[1:]
        for p, ctx2, st2 in self.conjunct(first, ctx, st):
            for ps, ctx3, st3 in self.conjuncts(rest, ctx2, st2):
                yield [p] + ps, ctx3, st3

    def conjunct(self, conj, ctx: tuple, st: State):
        if not is_hypothetical(conj):
            yield from self.atom(conj, ctx, st)
            return
        eigens, hyp_atom, body, st = open_hypothetical(conj, st)
        (hid,), st = st.new_rids(1)
        for p, out, st2 in self.atom(body, ctx + (Resource(hid, hyp_atom),), st):
            if any(r.rid == hid for r in out):
                continue
            st3 = discharge(eigens, out, st2)
            if st3 is not None:
                yield Hypothesis(eigens, hid, p), out, st3


def _resources(premises) -> tuple:
    return tuple(Resource(p.index, p.formula, p.origin) for p in premises)


def prove_all(premises, goal: Assert, stats: SearchStats | None = None) -> list[Derivation]:
    """Every derivation of ``goal`` consuming all ``premises`` exactly once."""
    search = _Search(stats if stats is not None else SearchStats())
    st = initial_state(premises, goal)
    results = []
    for proof, out, final in search.atom(goal, _resources(premises), st):
        if out:
            search.stats.unconsumed += 1
            continue
        search.stats.proofs += 1
        results.append(Derivation(resolve_proof(proof, final), final.resolve_atom(goal)))
    return results
