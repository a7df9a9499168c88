"""Higher-order pattern unification under a mixed quantifier prefix.

Every glue variable has a birth index.  An existential variable may be
instantiated to a term mentioning an eigenvariable only if that
eigenvariable was born before it, or if it reaches the eigenvariable
through one of its own arguments.  Flexible terms must be patterns: an
existential head applied to distinct eigenvariables (or, inside a term,
distinct locally bound variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .terms import (
    EIGEN,
    EXISTENTIAL,
    App,
    Arrow,
    Const,
    GlueVar,
    Lam,
    Term,
    Var,
    all_names,
    arg_types,
    normalize,
    result_type,
    spine,
    subst_glue,
)


class UnificationError(Exception):
    """``kind`` is one of ``clash``, ``escape``, ``not-a-pattern``, ``occurs``."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


class Substitution(Mapping[str, Term]):
    """Immutable map from existential variable names to terms."""

    def __init__(self, mapping: Mapping[str, Term] | None = None):
        self._map = dict(mapping or {})

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        from .syntax import format_term

        body = ", ".join(f"{k} := {format_term(v)}" for k, v in self._map.items())
        return f"Substitution({{{body}}})"

    def apply(self, term: Term) -> Term:
        return normalize(_resolve(term, self._map))


def _resolve(term: Term, subst: Mapping[str, Term]) -> Term:
    """Apply a triangular substitution until no bound variable remains."""
    if not subst:
        return term
    names = {t.name for t in _glue_occurrences(term)} & subst.keys()
    while names:
        term = subst_glue(term, {n: subst[n] for n in names})
        names = {t.name for t in _glue_occurrences(term)} & subst.keys()
    return term


def _glue_occurrences(term) -> Iterator[GlueVar]:
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, GlueVar):
            yield t
        elif isinstance(t, App):
            stack.append(t.fun)
            stack.append(t.arg)
        elif isinstance(t, Lam):
            stack.append(t.body)


@dataclass(frozen=True)
class Bindings:
    """Unifier state threaded through proof search.

    ``subst`` is triangular (ranges may mention other bound variables);
    ``births`` holds birth indices for both existentials and eigens;
    ``counter`` feeds fresh names and birth indices.
    """

    subst: Mapping[str, Term] = field(default_factory=dict)
    births: Mapping[str, int] = field(default_factory=dict)
    counter: int = 0

    def resolve(self, term: Term) -> Term:
        return normalize(_resolve(term, self.subst))

    def fresh(self, base: str, kind: str = EXISTENTIAL, type=None, birth: int | None = None):
        """A new glue variable; returns ``(var, new_bindings)``."""
        n = self.counter + 1
        var = GlueVar(f"{base}_{n}", kind, type)
        births = dict(self.births)
        births[var.name] = n if birth is None else birth
        return var, Bindings(self.subst, births, n)

    def unify(self, a: Term, b: Term) -> "Bindings":
        u = _Unifier(self)
        u.solve(a, b)
        return u.result()

    def unify_all(self, equations: Iterable[tuple[Term, Term]]) -> "Bindings":
        u = _Unifier(self)
        for a, b in equations:
            u.solve(a, b)
        return u.result()

    def lower(self, names: Iterable[str], birth: int) -> "Bindings":
        """Cap the birth index of the given existentials at ``birth``."""
        births = dict(self.births)
        for n in names:
            if births.get(n, 0) > birth:
                births[n] = birth
        return Bindings(self.subst, births, self.counter)


def pattern_unify(
    equations: Iterable[tuple[Term, Term]],
    eigen_scopes: Mapping[str, int],
    var_scopes: Mapping[str, int],
) -> Substitution:
    """Most general unifier of ``equations`` within the pattern fragment.

    ``eigen_scopes`` and ``var_scopes`` give the birth index of every
    eigenvariable and existential variable.  Raises ``UnificationError``.
    """
    births = {**var_scopes, **eigen_scopes}
    start = max(births.values(), default=0)
    b = Bindings({}, births, start).unify_all(equations)
    return Substitution({k: b.resolve(v) for k, v in b.subst.items()})


class _Unifier:
    def __init__(self, bindings: Bindings):
        self.subst = dict(bindings.subst)
        self.births = dict(bindings.births)
        self.counter = bindings.counter

    def result(self) -> Bindings:
        return Bindings(self.subst, self.births, self.counter)

    # ---- helpers

    def resolve(self, term):
        return normalize(_resolve(term, self.subst))

    def birth(self, var: GlueVar) -> int:
        try:
            return self.births[var.name]
        except KeyError:
            raise UnificationError("clash", f"variable {var.name} has no scope index") from None

    def fresh(self, base, kind, type, birth):
        self.counter += 1
        var = GlueVar(f"{base}_{self.counter}", kind, type)
        self.births[var.name] = birth
        return var

    def is_flex(self, head) -> bool:
        return isinstance(head, GlueVar) and head.kind == EXISTENTIAL and head.name not in self.subst

    def bind(self, var: GlueVar, value: Term):
        self.subst[var.name] = value

    # ---- main loop

    def solve(self, s: Term, t: Term):
        s, t = self.resolve(s), self.resolve(t)
        if isinstance(s, Lam) or isinstance(t, Lam):
            ty = s.var_type if isinstance(s, Lam) else t.var_type
            c = self.fresh("_u", EIGEN, ty, self.counter + 1)
            self.solve(App(s, c), App(t, c))
            return
        hs, xs = spine(s)
        ht, ys = spine(t)
        fs, ft = self.is_flex(hs), self.is_flex(ht)
        if fs and ft:
            self.flex_flex(hs, xs, ht, ys)
        elif fs:
            self.flex_rigid(hs, xs, t)
        elif ft:
            self.flex_rigid(ht, ys, s)
        else:
            if not _same_head(hs, ht) or len(xs) != len(ys):
                from .syntax import format_term

                raise UnificationError(
                    "clash", f"{format_term(s)} does not match {format_term(t)}"
                )
            for a, b in zip(xs, ys):
                self.solve(a, b)

    def check_pattern(self, head: GlueVar, args):
        seen = set()
        for a in args:
            if not (isinstance(a, GlueVar) and a.kind == EIGEN) or a.name in seen:
                from .syntax import format_term

                raise UnificationError(
                    "not-a-pattern",
                    f"{head.name} applied to {', '.join(format_term(x) for x in args)}",
                )
            seen.add(a.name)

    def flex_flex(self, f: GlueVar, xs, g: GlueVar, ys):
        self.check_pattern(f, xs)
        self.check_pattern(g, ys)
        if f.name == g.name:
            if len(xs) != len(ys):
                raise UnificationError("clash", f"{f.name} used at two arities")
            keep = [i for i, (x, y) in enumerate(zip(xs, ys)) if x == y]
            if len(keep) == len(xs):
                return
            h = self.fresh(_base(f), EXISTENTIAL, _sub_type(f.type, xs, [xs[i] for i in keep]), self.birth(f))
            self.bind(f, _abstract(App_n(h, [xs[i] for i in keep]), xs))
            return
        bf, bg = self.birth(f), self.birth(g)
        xnames = {x.name for x in xs}
        ynames = {y.name for y in ys}
        zs = [x for x in xs if x.name in ynames or self.birth(x) < bg]
        zs += [y for y in ys if y.name not in xnames and self.birth(y) < bf]
        h = self.fresh(_base(f), EXISTENTIAL, _sub_type(f.type, xs, zs), min(bf, bg))
        body = App_n(h, zs)
        self.bind(f, _abstract(body, xs))
        self.bind(g, _abstract(body, ys))

    def flex_rigid(self, f: GlueVar, xs, t: Term):
        self.check_pattern(f, xs)
        if any(v.name == f.name for v in _glue_occurrences(t)):
            from .syntax import format_term

            raise UnificationError("occurs", f"{f.name} occurs in {format_term(t)}")
        pruned = self.prune(t, f, xs, frozenset())
        self.bind(f, _abstract(pruned, xs))

    def prune(self, t: Term, f: GlueVar, xs, bound: frozenset) -> Term:
        bf = self.birth(f)
        xnames = {x.name for x in xs}

        def allowed(a) -> bool:
            if isinstance(a, Var):
                return a.name in bound
            if isinstance(a, GlueVar) and a.kind == EIGEN:
                return a.name in xnames or self.birth(a) < bf
            return False

        match t:
            case Lam(v, body, ty):
                return Lam(v, self.prune(body, f, xs, bound | {v}), ty)
            case Const():
                return t
            case Var(name):
                if name in bound:
                    return t
                raise UnificationError("escape", f"free variable {name} cannot occur in {f.name}")
            case GlueVar() if t.kind == EIGEN:
                if allowed(t):
                    return t
                raise UnificationError(
                    "escape", f"eigenvariable {t.name} would escape its scope through {f.name}"
                )
        head, args = spine(t)
        if self.is_flex(head):
            return self.prune_flex(head, args, f, xs, bound)
        new_head = self.prune(head, f, xs, bound)
        return App_n(new_head, [self.prune(a, f, xs, bound) for a in args])

    def prune_flex(self, g: GlueVar, ys, f: GlueVar, xs, bound) -> Term:
        bf, bg = self.birth(f), self.birth(g)
        xnames = {x.name for x in xs}
        seen = set()
        for y in ys:
            ok = isinstance(y, Var) or (isinstance(y, GlueVar) and y.kind == EIGEN)
            if not ok or y.name in seen:
                raise UnificationError("not-a-pattern", f"{g.name} has a non-variable argument")
            seen.add(y.name)

        def allowed(y) -> bool:
            if isinstance(y, Var):
                return y.name in bound
            return y.name in xnames or self.birth(y) < bf

        keep = [i for i, y in enumerate(ys) if allowed(y)]
        raise_needed = bg > bf
        extra = []
        if raise_needed:
            ynames = {y.name for y in ys}
            extra = [x for x in xs if bf <= self.birth(x) < bg and x.name not in ynames]
        if len(keep) == len(ys) and not raise_needed:
            return App_n(g, ys)
        kept = [ys[i] for i in keep]
        g_args = arg_types(g.type) if g.type is not None else [None] * len(ys)
        new_type = None
        if g.type is not None:
            res = result_type(g.type, len(ys))
            new_type = res
            for ty in reversed([g_args[i] for i in keep] + [x.type for x in extra]):
                new_type = Arrow(ty, new_type)
        g2 = self.fresh(_base(g), EXISTENTIAL, new_type, min(bf, bg))
        # g := λw1..wn. g2(w_keep..., extra...)
        names = [f"_w{i}" for i in range(len(ys))]
        body = App_n(g2, [Var(names[i]) for i in keep] + list(extra))
        value = body
        for name, ty in zip(reversed(names), reversed(g_args[: len(ys)] or [None] * len(ys))):
            value = Lam(name, value, ty)
        self.bind(g, value)
        return App_n(g2, kept + list(extra))


def App_n(head: Term, args) -> Term:
    for a in args:
        head = App(head, a)
    return head


def _same_head(a, b) -> bool:
    match a, b:
        case Const(x, _), Const(y, _):
            return x == y
        case GlueVar(x, kx, _), GlueVar(y, ky, _):
            return x == y and kx == ky
        case Var(x), Var(y):
            return x == y
    return False


def _base(var: GlueVar) -> str:
    return var.name.split("_")[0] or "V"


def _sub_type(ty, xs, zs):
    if ty is None:
        return None
    res = result_type(ty, len(xs))
    if res is None:
        return None
    for z in reversed(zs):
        if z.type is None:
            return None
        res = Arrow(z.type, res)
    return res


def _abstract(body: Term, eigens) -> Term:
    """``λv1..vn. body[v_i/eigen_i]`` with fresh ``v_i``."""
    taken = all_names(body)
    names = []
    for i in range(len(eigens)):
        n = f"z{i}"
        k = 0
        while n in taken or n in names:
            k += 1
            n = f"z{i}_{k}"
        names.append(n)
    mapping = {e.name: Var(n) for e, n in zip(eigens, names)}
    result = _replace_eigens(body, mapping)
    for e, n in zip(reversed(eigens), reversed(names)):
        result = Lam(n, result, e.type)
    return result


def _replace_eigens(term, mapping):
    match term:
        case GlueVar(name) if name in mapping:
            return mapping[name]
        case App(f, a):
            return App(_replace_eigens(f, mapping), _replace_eigens(a, mapping))
        case Lam(v, body, ty):
            return Lam(v, _replace_eigens(body, mapping), ty)
    return term
