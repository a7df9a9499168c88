"""The meaning language: typed lambda terms, normalization, alpha-equivalence
and higher-order pattern unification."""

from .syntax import format_term, format_type, parse_meaning, parse_type
from .terms import (
    E,
    EIGEN,
    EXISTENTIAL,
    QUANTIFIER_TYPE,
    T,
    App,
    Arrow,
    BaseType,
    Const,
    GlueVar,
    Lam,
    MeaningType,
    Term,
    Var,
    alpha_equal,
    arrow,
    free_vars,
    glue_vars,
    is_normal,
    normalize,
)
from .typecheck import MeaningTypeError, infer_type
from .unify import Bindings, Substitution, UnificationError, pattern_unify

__all__ = [
    "App",
    "Arrow",
    "BaseType",
    "Bindings",
    "Const",
    "E",
    "EIGEN",
    "EXISTENTIAL",
    "GlueVar",
    "Lam",
    "MeaningType",
    "MeaningTypeError",
    "QUANTIFIER_TYPE",
    "Substitution",
    "T",
    "Term",
    "UnificationError",
    "Var",
    "alpha_equal",
    "arrow",
    "format_term",
    "format_type",
    "free_vars",
    "glue_vars",
    "infer_type",
    "is_normal",
    "normalize",
    "parse_meaning",
    "parse_type",
    "pattern_unify",
]
