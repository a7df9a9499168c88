"""Simply typed lambda terms over typed constants.

Terms are immutable.  Lambda-bound variables are named; every operation
that substitutes under a binder renames it when capture would occur.
Glue variables (``GlueVar``) are a separate syntactic class: existential
ones are the unknowns solved by unification, eigen ones behave as local
constants introduced by hypothetical reasoning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class BaseType:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    dom: "MeaningType"
    cod: "MeaningType"

    def __str__(self):
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{dom}->{self.cod}"


@dataclass(frozen=True)
class TVar:
    """Type unknown, used only during inference."""

    id: int

    def __str__(self):
        return f"?{self.id}"


MeaningType = Union[BaseType, Arrow]

E = BaseType("e")
T = BaseType("t")
QUANTIFIER_TYPE = Arrow(Arrow(E, T), Arrow(Arrow(E, T), T))


def arrow(*types: MeaningType) -> MeaningType:
    """``arrow(a, b, c)`` is ``a -> b -> c``."""
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Arrow(ty, result)
    return result


def arg_types(ty) -> list:
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    return args


def result_type(ty, n: int):
    for _ in range(n):
        if not isinstance(ty, Arrow):
            return None
        ty = ty.cod
    return ty


# ---------------------------------------------------------------- terms

EXISTENTIAL = "existential"
EIGEN = "eigen"


@dataclass(frozen=True)
class Const:
    name: str
    type: MeaningType

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Var:
    """Lambda-bound variable."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"
    var_type: object = None

    def __str__(self):
        from .syntax import format_term

        return format_term(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"

    def __str__(self):
        from .syntax import format_term

        return format_term(self)


@dataclass(frozen=True)
class GlueVar:
    """Glue-language variable ranging over meaning terms."""

    name: str
    kind: str = EXISTENTIAL
    type: object = None

    def __str__(self):
        return self.name

    @property
    def is_eigen(self) -> bool:
        return self.kind == EIGEN


Term = Union[Const, Var, Lam, App, GlueVar]


def apply(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def lam(names: list[str], body: Term, types: list | None = None) -> Term:
    types = types or [None] * len(names)
    for name, ty in zip(reversed(names), reversed(types)):
        body = Lam(name, body, ty)
    return body


def spine(term: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fun
    args.reverse()
    return term, args


# ---------------------------------------------------------------- traversal


def subterms(term: Term) -> Iterator[Term]:
    stack = [term]
    while stack:
        t = stack.pop()
        yield t
        if isinstance(t, App):
            stack.append(t.arg)
            stack.append(t.fun)
        elif isinstance(t, Lam):
            stack.append(t.body)


def free_vars(term: Term) -> frozenset[str]:
    match term:
        case Var(name):
            return frozenset([name])
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Lam(v, body, _):
            return free_vars(body) - {v}
        case _:
            return frozenset()


def all_names(term: Term) -> set[str]:
    """Every lambda-variable name occurring in ``term``, bound or free."""
    names = set()
    for t in subterms(term):
        if isinstance(t, Var):
            names.add(t.name)
        elif isinstance(t, Lam):
            names.add(t.var)
    return names


def glue_vars(term: Term) -> list[GlueVar]:
    """Glue variables of ``term`` in left-to-right order, without repeats."""
    seen = {}
    for t in subterms(term):
        if isinstance(t, GlueVar) and t.name not in seen:
            seen[t.name] = t
    return list(seen.values())


def mentions(term: Term, names) -> bool:
    names = set(names)
    return any(isinstance(t, GlueVar) and t.name in names for t in subterms(term))


def fresh_name(base: str, avoid) -> str:
    base = base.rstrip("0123456789'") or "v"
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


# ---------------------------------------------------------------- substitution


def subst_var(term: Term, name: str, value: Term) -> Term:
    """Capture-avoiding ``term[value/name]`` for a lambda variable."""
    return _subst(term, {name: value}, {})


def subst_glue(term: Term, mapping: Mapping[str, Term]) -> Term:
    """Replace glue variables by terms (capture-avoiding, single pass)."""
    if not mapping:
        return term
    return _subst(term, {}, mapping)


def _subst(term, vmap, gmap):
    match term:
        case Var(name):
            return vmap.get(name, term)
        case GlueVar(name):
            return gmap.get(name, term)
        case Const():
            return term
        case App(f, a):
            f2, a2 = _subst(f, vmap, gmap), _subst(a, vmap, gmap)
            if f2 is f and a2 is a:
                return term
            return App(f2, a2)
        case Lam(v, body, ty):
            vmap = {k: x for k, x in vmap.items() if k != v}
            if not vmap and not gmap:
                return term
            incoming = set()
            for x in list(vmap.values()) + list(gmap.values()):
                incoming |= free_vars(x)
            if v in incoming:
                avoid = incoming | all_names(body) | set(vmap)
                new = fresh_name(v, avoid)
                body = _subst(body, {v: Var(new)}, {})
                v = new
            body2 = _subst(body, vmap, gmap)
            return Lam(v, body2, ty)
    raise TypeError(f"not a meaning term: {term!r}")


# ---------------------------------------------------------------- normalization


def normalize(term: Term, eta: bool = True) -> Term:
    """Beta-normal form, additionally eta-reduced unless ``eta=False``.

    Terminates on simply typed input.
    """
    match term:
        case App(f, a):
            f = normalize(f, eta)
            if isinstance(f, Lam):
                return normalize(subst_var(f.body, f.var, a), eta)
            return App(f, normalize(a, eta))
        case Lam(v, body, ty):
            body = normalize(body, eta)
            if (
                eta
                and isinstance(body, App)
                and body.arg == Var(v)
                and v not in free_vars(body.fun)
            ):
                return body.fun
            return Lam(v, body, ty)
        case _:
            return term


def is_normal(term: Term) -> bool:
    for t in subterms(term):
        if isinstance(t, App) and isinstance(t.fun, Lam):
            return False
        if (
            isinstance(t, Lam)
            and isinstance(t.body, App)
            and t.body.arg == Var(t.var)
            and t.var not in free_vars(t.body.fun)
        ):
            return False
    return True


def alpha_equal(a: Term, b: Term) -> bool:
    """Equality up to renaming of lambda-bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, env_a, env_b, depth):
    match a, b:
        case Var(x), Var(y):
            da, db = env_a.get(x), env_b.get(y)
            if da is None and db is None:
                return x == y
            return da == db
        case Const(x, _), Const(y, _):
            return x == y
        case GlueVar(x, kx, _), GlueVar(y, ky, _):
            return x == y and kx == ky
        case App(f1, a1), App(f2, a2):
            return _alpha(f1, f2, env_a, env_b, depth) and _alpha(a1, a2, env_a, env_b, depth)
        case Lam(x, b1, _), Lam(y, b2, _):
            return _alpha(b1, b2, {**env_a, x: depth}, {**env_b, y: depth}, depth + 1)
    return False
