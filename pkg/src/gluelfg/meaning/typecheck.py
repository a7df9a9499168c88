"""Type inference for meaning terms.

Lambda binders may be unannotated, so inference runs first-order
unification over type unknowns (``TVar``) and only then insists on a
ground simple type.
"""

from __future__ import annotations

from typing import Mapping

from .terms import App, Arrow, BaseType, Const, GlueVar, Lam, TVar, Term, Var


class MeaningTypeError(TypeError):
    pass


class TypeInference:
    """Accumulates type equations; reusable across several terms."""

    def __init__(self):
        self.solution: dict[int, object] = {}
        self._next = 0
        self._glue: dict[str, object] = {}

    def fresh(self) -> TVar:
        self._next += 1
        return TVar(-self._next)

    def walk(self, ty):
        while isinstance(ty, TVar) and ty.id in self.solution:
            ty = self.solution[ty.id]
        return ty

    def resolve(self, ty):
        ty = self.walk(ty)
        if isinstance(ty, Arrow):
            return Arrow(self.resolve(ty.dom), self.resolve(ty.cod))
        return ty

    def _occurs(self, tv: TVar, ty) -> bool:
        ty = self.walk(ty)
        if ty == tv:
            return True
        if isinstance(ty, Arrow):
            return self._occurs(tv, ty.dom) or self._occurs(tv, ty.cod)
        return False

    def unify(self, a, b) -> bool:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return True
        if isinstance(a, TVar):
            if self._occurs(a, b):
                return False
            self.solution[a.id] = b
            return True
        if isinstance(b, TVar):
            return self.unify(b, a)
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            return self.unify(a.dom, b.dom) and self.unify(a.cod, b.cod)
        return False

    def infer(self, term: Term, env: Mapping[str, object] | None = None):
        env = dict(env or {})
        return self._infer(term, env)

    def _infer(self, term, env):
        match term:
            case Const(_, ty):
                return ty
            case Var(name):
                if name not in env:
                    raise MeaningTypeError(f"unbound variable {name!r}")
                return env[name]
            case GlueVar(name, _, ty):
                if ty is not None:
                    return ty
                if name in env:
                    return env[name]
                if name not in self._glue:
                    self._glue[name] = self.fresh()
                return self._glue[name]
            case Lam(v, body, ty):
                dom = ty if ty is not None else self.fresh()
                cod = self._infer(body, {**env, v: dom})
                return Arrow(dom, cod)
            case App(f, a):
                fty = self._infer(f, env)
                aty = self._infer(a, env)
                res = self.fresh()
                if not self.unify(fty, Arrow(aty, res)):
                    from .syntax import format_term

                    raise MeaningTypeError(
                        f"type mismatch in application {format_term(term, canonical=False)}: "
                        f"{format_term(f, canonical=False)} has type {self.resolve(fty)}, "
                        f"argument has type {self.resolve(aty)}"
                    )
                return res
        raise MeaningTypeError(f"not a meaning term: {term!r}")


def is_ground(ty) -> bool:
    if isinstance(ty, BaseType):
        return True
    if isinstance(ty, Arrow):
        return is_ground(ty.dom) and is_ground(ty.cod)
    return False


def infer_type(term: Term, env: Mapping[str, object] | None = None):
    """The simple type of ``term``; ``env`` types its free variables.

    Raises ``MeaningTypeError`` on a mismatch or when the type is not
    uniquely determined.
    """
    inf = TypeInference()
    ty = inf.resolve(inf.infer(term, env))
    if not is_ground(ty):
        raise MeaningTypeError(f"type of term is not determined: {ty}")
    return ty
