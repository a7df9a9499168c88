"""The glue language: formulas, their concrete syntax, lexicons and
instantiation of lexical templates."""

from .formulas import (
    Assert,
    FLabel,
    ForallM,
    ForallS,
    FragmentError,
    FSelect,
    HVar,
    Lollipop,
    Proj,
    Select,
    Tensor,
    Up,
    atoms,
    check_fragment,
    conjuncts,
    format_glue,
    strip_foralls,
)
from .syntax import GlueSyntaxError, LexicalEntry, Lexicon, load_lexicon, parse_glue, parse_lexicon

__all__ = [
    "Assert",
    "FLabel",
    "FSelect",
    "ForallM",
    "ForallS",
    "FragmentError",
    "GlueSyntaxError",
    "HVar",
    "LexicalEntry",
    "Lexicon",
    "Lollipop",
    "Proj",
    "Select",
    "Tensor",
    "Up",
    "atoms",
    "check_fragment",
    "conjuncts",
    "format_glue",
    "load_lexicon",
    "parse_glue",
    "parse_lexicon",
    "strip_foralls",
]
