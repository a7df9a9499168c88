"""End-to-end interpretation: sentence or f-structure in, readings out."""

from __future__ import annotations

from dataclasses import dataclass, field

from .glue.formulas import Assert
from .glue.instantiate import InstantiationError, Premise
from .glue.syntax import Lexicon
from .grammar import (
    Occurrence,
    PhraseRule,
    Tree,
    build_fstructure,
    collect_premises,
    parse_cstructure,
    tokenize_sentence,
)
from .prover import Reading, SearchStats, enumerate_readings, goal_for
from .structures import (
    Analysis,
    Atom,
    FStructure,
    NodeRef,
    Path,
    SigmaLink,
    StructureError,
    get_path,
)


class SelectionError(Exception):
    """No lexical entry, or more than one, accounts for an f-structure feature."""


@dataclass
class Interpretation:
    """One analysis and what the prover made of it.

    ``diagnosis`` is ``ok``, ``unconsumed-resources``, ``unsatisfiable-goal``
    or, when the analysis itself failed, the error kind (then ``error``
    holds the message).
    """

    tree: Tree | None
    analysis: Analysis | None
    premises: list[Premise] = field(default_factory=list)
    goal: Assert | None = None
    readings: list[Reading] = field(default_factory=list)
    diagnosis: str = "ok"
    error: str = ""


def interpret_premises(premises, goal: Assert, oracle: bool = False) -> tuple[list[Reading], str]:
    stats = SearchStats()
    readings = enumerate_readings(premises, goal, oracle=oracle, stats=stats)
    if oracle and not readings:
        enumerate_readings(premises, goal, stats=stats)
    return readings, "ok" if readings else stats.diagnosis


def analyze_sentence(
    sentence: str, lexicon: Lexicon, rules: list[PhraseRule], oracle: bool = False, start: str = "S"
) -> list[Interpretation]:
    """Interpret every parse of ``sentence``.

    Raises ``GrammarError`` for unknown words or when nothing parses; a
    parse whose f-structure or premises cannot be built is reported as an
    interpretation without readings.
    """
    words = tokenize_sentence(sentence)
    results = []
    for tree in parse_cstructure(words, rules, lexicon, start):
        try:
            analysis, occurrences = build_fstructure(tree)
        except StructureError as exc:
            results.append(Interpretation(tree, None, diagnosis=exc.kind, error=str(exc)))
            continue
        results.append(_interpret(tree, analysis, occurrences, oracle))
    return results


def prove_fstructure(
    fstructure: FStructure, links: list[SigmaLink], lexicon: Lexicon, oracle: bool = False
) -> Interpretation:
    """Interpret an f-structure given directly, choosing entries by feature."""
    analysis = Analysis.of(fstructure, links)
    return _interpret(None, analysis, select_entries(analysis, lexicon), oracle)


def _interpret(tree, analysis: Analysis, occurrences, oracle: bool) -> Interpretation:
    try:
        premises, goal = collect_premises(analysis, occurrences)
    except InstantiationError as exc:
        return Interpretation(tree, analysis, diagnosis=exc.kind, error=str(exc))
    readings, diagnosis = interpret_premises(premises, goal, oracle)
    return Interpretation(tree, analysis, premises, goal, readings, diagnosis)


# ---------------------------------------------------------------- entry selection


def _holds(analysis: Analysis, node: str, eq) -> bool:
    fs = analysis.fstructure
    eq = eq.substitute({"^": node})

    def value(path: Path):
        return get_path(fs, path.root, path.attrs)

    try:
        left = value(eq.lhs)
        right = eq.rhs if isinstance(eq.rhs, Atom) else value(eq.rhs)
    except StructureError:
        return False
    return left == right


def select_entries(analysis: Analysis, lexicon: Lexicon) -> list[Occurrence]:
    """Lexical entries realizing each node's quoted features.

    A node feature ``A 'v'`` calls for the entry that states
    ``(^ A) = 'v'`` and whose other equations also hold at the node.
    """
    fs = analysis.fstructure
    occurrences: list[Occurrence] = []
    for label in fs.labels():
        chosen = []
        for attr, val in fs.attrs(label).items():
            if isinstance(val, NodeRef) or not val.quoted:
                continue
            candidates = [
                e
                for e in lexicon.entries
                if (attr, val) in e.features() and all(_holds(analysis, label, q) for q in e.equations)
            ]
            if not candidates:
                raise SelectionError(f"no lexical entry for {attr} {val} at {label}")
            if len(candidates) > 1:
                words = ", ".join(e.word for e in candidates)
                raise SelectionError(f"{attr} {val} at {label} is ambiguous between {words}")
            if candidates[0] not in chosen:
                chosen.append(candidates[0])
        for e in chosen:
            occurrences.append(Occurrence(len(occurrences), e.word, e, label))
    return occurrences


__all__ = [
    "Interpretation",
    "SelectionError",
    "analyze_sentence",
    "goal_for",
    "interpret_premises",
    "prove_fstructure",
    "select_entries",
]
