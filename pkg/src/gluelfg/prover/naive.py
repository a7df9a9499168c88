"""Reference prover: a plain sequent calculus that enumerates every split
of the context explicitly.

At each use of an implication the remaining resources are distributed over
one bin per antecedent conjunct plus one for the continuation, in every
possible way.  An axiom needs a context holding exactly the matching
atom.  Exponential, and meant only as an independent check of
``prove_all`` on small inputs.

The only shortcut is a sound relevance filter applied before a context is
searched: some resource must be able to produce the goal, and every
resource must produce something that the goal or another resource could
consume.
"""

from __future__ import annotations

from itertools import product

from ..glue.formulas import Assert, Lollipop, conjuncts, strip_foralls
from .derivation import Apply, Axiom, Derivation, Hypothesis, resolve_proof
from .state import (
    Resource,
    State,
    initial_state,
    instantiate,
    is_hypothetical,
    open_hypothetical,
    may_match,
    unify_atom,
)


def _supplies(f) -> list[Assert]:
    _, body = strip_foralls(f)
    if isinstance(body, Lollipop):
        return conjuncts(body.consequent)
    return [body]


def _demands(f) -> list[Assert]:
    _, body = strip_foralls(f)
    if not isinstance(body, Lollipop):
        return []
    wanted = []
    for c in conjuncts(body.antecedent):
        _, inner = strip_foralls(c)
        wanted.append(inner.consequent if isinstance(inner, Lollipop) else inner)
    return wanted


def _plausible(goal: Assert, ctx: tuple, st: State) -> bool:
    supplies = [_supplies(r.formula) for r in ctx]
    if not any(may_match(a, goal, st) for s in supplies for a in s):
        return False
    demands = [_demands(r.formula) for r in ctx]
    for i, s in enumerate(supplies):
        if any(may_match(a, goal, st) for a in s):
            continue
        if not any(
            may_match(a, d, st) for j, ds in enumerate(demands) if j != i for d in ds for a in s
        ):
            return False
    return True


def _prove(goal: Assert, ctx: tuple, st: State):
    """Proofs of ``ctx ⊢ goal`` that use every resource in ``ctx``."""
    if not _plausible(goal, ctx, st):
        return
    if len(ctx) == 1:
        r = ctx[0]
        binders, body = strip_foralls(r.formula)
        if isinstance(body, Assert):
            if not binders:
                st2 = unify_atom(body, goal, st)
                if st2 is not None:
                    yield Axiom(r.rid), st2
            else:
                inst, body, st1 = instantiate(binders, body, st)
                (new,), st1 = st1.new_rids(1)
                st2 = unify_atom(body, goal, st1)
                if st2 is not None:
                    yield Apply(r.rid, inst, (), (new,), Axiom(new)), st2
    for i, r in enumerate(ctx):
        binders, body = strip_foralls(r.formula)
        if not isinstance(body, Lollipop):
            continue
        rest = ctx[:i] + ctx[i + 1 :]
        n_conj = len(conjuncts(body.antecedent))
        for assignment in product(range(n_conj + 1), repeat=len(rest)):
            bins = [tuple(x for x, b in zip(rest, assignment) if b == j) for j in range(n_conj + 1)]
            inst, opened, st1 = instantiate(binders, body, st)
            conjs = conjuncts(opened.antecedent)
            cons = conjuncts(opened.consequent)
            for ants, st2 in _prove_conjuncts(conjs, bins, st1):
                produced, st3 = st2.new_rids(len(cons))
                final_ctx = bins[-1] + tuple(Resource(rid, a) for rid, a in zip(produced, cons))
                for then, st4 in _prove(goal, final_ctx, st3):
                    yield Apply(r.rid, inst, tuple(ants), produced, then), st4


def _prove_conjuncts(conjs, bins, st):
    if not conjs:
        yield [], st
        return
    for p, st2 in _prove_conjunct(conjs[0], bins[0], st):
        for ps, st3 in _prove_conjuncts(conjs[1:], bins[1:], st2):
            yield [p] + ps, st3


def _prove_conjunct(conj, ctx, st):
    if not is_hypothetical(conj):
        if ctx:
            yield from _prove(conj, ctx, st)
        return
    eigens, hyp_atom, body, st = open_hypothetical(conj, st)
    (hid,), st = st.new_rids(1)
    for p, st2 in _prove(body, ctx + (Resource(hid, hyp_atom),), st):
        yield Hypothesis(eigens, hid, p), st2


def prove_all_naive(premises, goal: Assert) -> list[Derivation]:
    """Same contract as ``prove_all``; practical for up to about 8 premises."""
    ctx = tuple(Resource(p.index, p.formula, p.origin) for p in premises)
    if not ctx:
        return []
    st = initial_state(premises, goal)
    return [
        Derivation(resolve_proof(proof, final), final.resolve_atom(goal))
        for proof, final in _prove(goal, ctx, st)
    ]
