"""Glue semantics for LFG.

Sentence meanings are deduced in a fragment of linear logic from the
meaning contributions of the words, read off an f-structure.  Each
distinct conclusion is one reading; quantifier scope ambiguities appear as
alternative derivations.
"""

__version__ = "0.1.0"

from .glue import (
    Assert,
    LexicalEntry,
    Lexicon,
    check_fragment,
    format_glue,
    load_lexicon,
    parse_glue,
    parse_lexicon,
)
from .glue.instantiate import InstantiationError, Premise, instantiate_entry
from .grammar import (
    GrammarError,
    PhraseRule,
    Tree,
    build_fstructure,
    collect_premises,
    load_rules,
    parse_cstructure,
    parse_rules,
)
from .interpret import Interpretation, analyze_sentence, prove_fstructure
from .meaning import alpha_equal, format_term, infer_type, normalize, parse_meaning, pattern_unify
from .prover import (
    Derivation,
    Reading,
    enumerate_readings,
    goal_for,
    prove_all,
    prove_all_naive,
    replay,
)
from .structures import (
    Analysis,
    FStructure,
    SigmaLink,
    parse_fstructure,
    solve_equations,
)

__all__ = [
    "Analysis",
    "Assert",
    "Derivation",
    "FStructure",
    "GrammarError",
    "InstantiationError",
    "Interpretation",
    "LexicalEntry",
    "Lexicon",
    "PhraseRule",
    "Premise",
    "Reading",
    "SigmaLink",
    "Tree",
    "alpha_equal",
    "analyze_sentence",
    "build_fstructure",
    "check_fragment",
    "collect_premises",
    "enumerate_readings",
    "format_glue",
    "format_term",
    "goal_for",
    "infer_type",
    "instantiate_entry",
    "load_lexicon",
    "load_rules",
    "normalize",
    "parse_cstructure",
    "parse_fstructure",
    "parse_glue",
    "parse_lexicon",
    "parse_meaning",
    "parse_rules",
    "pattern_unify",
    "prove_all",
    "prove_all_naive",
    "prove_fstructure",
    "replay",
    "solve_equations",
]
