"""Reading and printing meaning terms and types.

Grammar::

    term  ::= ('λ' | 'lam' | '\\') IDENT [':' type] '.' term | app
    app   ::= atom {atom}
    atom  ::= IDENT ['(' term {',' term} ')'] | '(' term ')' ['(' term {',' term} ')']

``f(a, b)`` is the curried application ``f a b``.  For a constant whose
type is ``(e->t)->(e->t)->t`` the three-argument form ``Q(z, P, S)``
abbreviates ``Q (λz.P) (λz.S)``.
"""

from __future__ import annotations

from typing import Mapping

from .._lexer import ParseError, TokenStream
from .terms import (
    E,
    QUANTIFIER_TYPE,
    App,
    Arrow,
    BaseType,
    Const,
    GlueVar,
    Lam,
    Term,
    Var,
    free_vars,
    spine,
    subst_var,
)

Signature = Mapping[str, object]

BASE_TYPES = {"e": BaseType("e"), "t": BaseType("t")}


# ---------------------------------------------------------------- types


def parse_type(text: str):
    ts = TokenStream(text)
    ty = read_type(ts)
    ts.expect_end()
    return ty


def read_type(ts: TokenStream):
    dom = _read_type_atom(ts)
    if ts.accept("ARROW"):
        return Arrow(dom, read_type(ts))
    return dom


def _read_type_atom(ts: TokenStream):
    if ts.accept("("):
        ty = read_type(ts)
        ts.expect(")")
        return ty
    tok = ts.expect("IDENT", what="a type")
    if tok.value not in BASE_TYPES:
        ts.error(f"unknown base type {tok.value!r}", tok)
    return BASE_TYPES[tok.value]


def format_type(ty) -> str:
    return str(ty)


# ---------------------------------------------------------------- terms


def parse_meaning(
    text: str,
    signature: Signature,
    glue_vars: Mapping[str, GlueVar] | None = None,
) -> Term:
    """Parse ``text``; identifiers resolve to lambda variables, then the
    given glue variables, then signature constants."""
    ts = TokenStream(text)
    term = TermReader(ts, signature, glue_vars or {}).read()
    ts.expect_end()
    return term


def _is_lambda(ts: TokenStream) -> bool:
    return ts.at("LAMBDA") or (ts.at_keyword("lam") and ts.peek_at(1).kind == "IDENT")


class TermReader:
    """Recursive-descent reader over a shared token stream.

    ``glue_scope`` maps names to glue variables; ``on_glue_use`` (if set)
    is called with each glue-variable name read, letting the glue-formula
    reader classify its binders.
    """

    def __init__(self, ts: TokenStream, signature: Signature, glue_scope, on_glue_use=None):
        self.ts = ts
        self.signature = signature
        self.glue_scope = glue_scope
        self.on_glue_use = on_glue_use

    def read(self, bound: tuple = ()) -> Term:
        ts = self.ts
        if _is_lambda(ts):
            ts.next()
            name = ts.expect("IDENT", what="a variable").value
            ty = None
            if ts.accept(":"):
                ty = read_type(ts)
            ts.expect(".")
            body = self.read(bound + (name,))
            return Lam(name, body, ty)
        term = self._atom(bound)
        while self._starts_atom():
            term = App(term, self._atom(bound))
        return term

    def _starts_atom(self) -> bool:
        ts = self.ts
        if ts.at("("):
            return True
        if ts.at("IDENT"):
            return ts.peek.value not in ("forall",) and not (
                ts.peek.value == "lam" and ts.peek_at(1).kind == "IDENT"
            )
        return False

    def _atom(self, bound) -> Term:
        ts = self.ts
        if ts.accept("("):
            head = self.read(bound)
            ts.expect(")")
        else:
            tok = ts.expect("IDENT", what="a meaning term")
            head = self._resolve(tok, bound)
        if ts.at("("):
            if self._is_sugar(head):
                return self._sugar(head, bound)
            ts.next()
            args = [self.read(bound)]
            while ts.accept(","):
                args.append(self.read(bound))
            ts.expect(")")
            for a in args:
                head = App(head, a)
        return head

    def _resolve(self, tok, bound) -> Term:
        name = tok.value
        if name in bound:
            return Var(name)
        if name in self.glue_scope:
            if self.on_glue_use is not None:
                self.on_glue_use(name, tok)
            return self.glue_scope[name]
        if name in self.signature:
            return Const(name, self.signature[name])
        raise ParseError(f"unknown constant {name!r}", self.ts.text, tok.pos)

    def _is_sugar(self, head) -> bool:
        if not (isinstance(head, Const) and head.type == QUANTIFIER_TYPE):
            return False
        ts = self.ts
        if ts.peek_at(1).kind != "IDENT" or ts.peek_at(2).kind != ",":
            return False
        # count top-level arguments of the parenthesised group
        depth, commas, k = 0, 0, 0
        while True:
            tok = ts.peek_at(k)
            if tok.kind == "EOF":
                return False
            if tok.kind == "(":
                depth += 1
            elif tok.kind == ")":
                depth -= 1
                if depth == 0:
                    break
            elif tok.kind == "," and depth == 1:
                commas += 1
            k += 1
        return commas == 2

    def _sugar(self, head, bound) -> Term:
        ts = self.ts
        ts.expect("(")
        var = ts.expect("IDENT").value
        ts.expect(",")
        restr = self.read(bound + (var,))
        ts.expect(",")
        scope = self.read(bound + (var,))
        ts.expect(")")
        return App(App(head, Lam(var, restr, E)), Lam(var, scope, E))


# ---------------------------------------------------------------- printing


def format_term(term: Term, canonical: bool = True) -> str:
    """Render ``term`` in the concrete syntax.

    With ``canonical`` set, bound variables are renamed ``z1, z2, ...`` in
    left-to-right order, so alpha-equivalent terms print identically.
    """
    return _Printer(canonical).show(term, {})


def _opened(fn: Term, var: str) -> Term:
    if isinstance(fn, Lam):
        return subst_var(fn.body, fn.var, Var(var))
    return App(fn, Var(var))


class _Printer:
    def __init__(self, canonical: bool):
        self.canonical = canonical
        self.count = 0

    def _bind(self, name: str) -> str:
        if not self.canonical:
            return name
        self.count += 1
        return f"z{self.count}"

    def show(self, term, env) -> str:
        match term:
            case Var(name):
                return env.get(name, name)
            case Const(name, _) | GlueVar(name):
                return name
            case Lam(v, body, _):
                new = self._bind(v)
                return f"λ{new}. {self.show(body, {**env, v: new})}"
            case App():
                return self._show_app(term, env)
        raise TypeError(f"not a meaning term: {term!r}")

    def _show_app(self, term, env) -> str:
        head, args = spine(term)
        if isinstance(head, Const) and head.type == QUANTIFIER_TYPE and len(args) == 2:
            restr, scope = args
            tmp = _binder_name(restr, scope)
            new = self._bind(tmp)
            inner = {**env, tmp: new}
            r = self.show(_opened(restr, tmp), inner)
            s = self.show(_opened(scope, tmp), inner)
            return f"{head.name}({new}, {r}, {s})"
        if isinstance(head, (Lam, App)):
            shown_head = f"({self.show(head, env)})"
        else:
            shown_head = self.show(head, env)
        shown_args = ", ".join(self.show(a, env) for a in args)
        return f"{shown_head}({shown_args})"


def _binder_name(restr: Term, scope: Term) -> str:
    """Name for the variable bound by quantifier sugar; must not be free
    in either property."""
    taken = free_vars(restr) | free_vars(scope)
    base = restr.var if isinstance(restr, Lam) else scope.var if isinstance(scope, Lam) else "z"
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"
