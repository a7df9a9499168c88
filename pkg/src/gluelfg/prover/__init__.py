"""Linear-logic proof search over glue premises and reading enumeration."""

from __future__ import annotations

from ..glue.formulas import Assert
from ..meaning.syntax import format_term
from ..meaning.terms import GlueVar, T, glue_vars, normalize
from ..meaning.typecheck import infer_type
from .derivation import (
    Apply,
    Axiom,
    Derivation,
    Hypothesis,
    Reading,
    ReplayResult,
    format_trace,
    replay,
)
from .goal_directed import SearchStats, prove_all
from .naive import prove_all_naive


class ReadingError(Exception):
    """A derivation concluded with something that is not a closed reading."""


def goal_for(root) -> Assert:
    """``root ~t M`` with ``M`` the meaning to be found."""
    return Assert(root, T, GlueVar("M", type=T))


def enumerate_readings(premises, goal, oracle: bool = False, stats: SearchStats | None = None) -> list[Reading]:
    """Distinct meanings derivable for ``goal``, sorted by canonical form.

    ``goal`` may be an ``Assert`` or a σ-node (then ``goal_for`` is used).
    Each reading keeps the first derivation found for it.
    """
    if not isinstance(goal, Assert):
        goal = goal_for(goal)
    derivations = prove_all_naive(premises, goal) if oracle else prove_all(premises, goal, stats)
    found: dict[str, Reading] = {}
    for d in derivations:
        meaning = normalize(d.meaning)
        if glue_vars(meaning):
            raise ReadingError(f"derived meaning {format_term(meaning)} is not closed")
        if infer_type(meaning) != T:
            raise ReadingError(f"derived meaning {format_term(meaning)} is not of type t")
        key = format_term(meaning)
        if key not in found:
            found[key] = Reading(meaning, d, goal.sem)
    return [found[k] for k in sorted(found)]


__all__ = [
    "Apply",
    "Axiom",
    "Derivation",
    "Hypothesis",
    "Reading",
    "ReadingError",
    "ReplayResult",
    "SearchStats",
    "enumerate_readings",
    "format_trace",
    "goal_for",
    "prove_all",
    "prove_all_naive",
    "replay",
]
