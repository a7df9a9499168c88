"""Readers for glue formulas and lexicon files.

Glue grammar (ASCII; Unicode connectives are accepted too)::

    F     ::= 'forall' V {',' V} '.' F | T ['-o' F]
    T     ::= P {'*' P}
    P     ::= A | '(' F ')'
    A     ::= S '~' TypeIdx MeaningTerm
    S     ::= 's(' FTerm {Attr} ')' | '(' S Attr ')' | H
    FTerm ::= '^' | label | '(' FTerm Attr ')'
    V     ::= name [':' type]

Binder kinds follow position: a ``forall`` inside the antecedent of an
implication introduces eigenvariables, any other one existentials.  A
binder used in a semantic-structure position quantifies over semantic
structures; otherwise over meaning terms, with its type inferred from the
``~τ`` indices when not annotated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Mapping

from .._lexer import ParseError, TokenStream
from ..meaning.syntax import TermReader, read_type
from ..meaning.terms import EIGEN, EXISTENTIAL, App, GlueVar, Lam, TVar
from ..meaning.typecheck import MeaningTypeError, TypeInference, is_ground
from ..structures import SIGMA_ATTRIBUTES, Atom, Equation, Path
from .formulas import (
    Assert,
    Formula,
    ForallM,
    ForallS,
    FLabel,
    FSelect,
    FragmentError,
    HVar,
    Lollipop,
    Proj,
    Select,
    Tensor,
    Up,
    check_fragment,
)


class GlueSyntaxError(ParseError):
    pass


@dataclass
class _Binder:
    name: str
    kind: str
    annotation: object
    tvar: TVar
    sem_uses: int = 0
    meaning_uses: int = 0


# ---------------------------------------------------------------- formulas


def parse_glue(text: str, signature: Mapping[str, object]) -> Formula:
    """Parse a glue formula (template or instantiated)."""
    ts = TokenStream(text)
    formula = GlueReader(ts, signature).read_formula()
    ts.expect_end()
    return formula


class GlueReader:
    def __init__(self, ts: TokenStream, signature: Mapping[str, object]):
        self.ts = ts
        self.signature = signature
        self.scope: dict[str, _Binder] = {}
        self.glue: dict[str, GlueVar] = {}
        self.inference = TypeInference()

    # the public entry point resolves types once the whole formula is read
    def read_formula(self) -> Formula:
        start = self.ts.peek
        f = self._formula(in_antecedent=False)
        return self._finish(f, start)

    def _formula(self, in_antecedent: bool) -> Formula:
        ts = self.ts
        if ts.at_keyword("forall") or ts.at("FORALL"):
            return self._forall(in_antecedent)
        left = self._tensor(in_antecedent)
        if ts.accept("LOLLI"):
            right = self._formula(in_antecedent)
            return Lollipop(left, right)
        return left

    def _tensor(self, in_antecedent: bool) -> Formula:
        # antecedent position is decided by the caller of _formula: a tensor
        # operand is in an antecedent iff it is followed by -o at this level
        start = self.ts.i
        saved = (dict(self.scope), dict(self.glue))
        parts = [self._primary(True)]
        while self.ts.accept("TENSOR"):
            parts.append(self._primary(True))
        if not self.ts.at("LOLLI"):
            # re-read as non-antecedent so nested binders get the right kind
            self.ts.i = start
            self.scope, self.glue = dict(saved[0]), dict(saved[1])
            parts = [self._primary(in_antecedent)]
            while self.ts.accept("TENSOR"):
                parts.append(self._primary(in_antecedent))
        result = parts[0]
        for p in parts[1:]:
            result = Tensor(result, p)
        return result

    def _primary(self, in_antecedent: bool) -> Formula:
        ts = self.ts
        if ts.at("("):
            start = ts.i
            sem_error = None
            try:
                sem = self._sem()
            except ParseError as exc:
                sem, sem_error = None, exc
            if sem is not None and ts.at("LEADSTO"):
                return self._atom_rest(sem)
            ts.i = start
            try:
                ts.expect("(")
                f = self._formula(in_antecedent)
                ts.expect(")")
            except ParseError as exc:
                # report whichever reading got further
                if sem_error is not None and (sem_error.pos or 0) >= (exc.pos or 0):
                    raise sem_error from None
                raise
            return f
        sem = self._sem()
        return self._atom_rest(sem)

    def _forall(self, in_antecedent: bool) -> Formula:
        ts = self.ts
        ts.next()
        kind = EIGEN if in_antecedent else EXISTENTIAL
        binders = []
        while True:
            tok = ts.expect("IDENT", what="a variable")
            ann = None
            if ts.accept(":"):
                ann = read_type(ts)
            binders.append(_Binder(tok.value, kind, ann, self.inference.fresh()))
            if not ts.accept(","):
                break
        ts.expect(".")
        saved_scope, saved_glue = dict(self.scope), dict(self.glue)
        for b in binders:
            self.scope[b.name] = b
            ty = b.annotation if b.annotation is not None else b.tvar
            self.glue[b.name] = GlueVar(b.name, kind, ty)
        body = self._formula(in_antecedent)
        self.scope, self.glue = saved_scope, saved_glue
        for b in reversed(binders):
            if b.sem_uses and b.meaning_uses:
                ts.error(f"variable {b.name} used both as a semantic structure and a meaning")
            if b.sem_uses:
                body = ForallS(b.name, body)
            else:
                ty = b.annotation if b.annotation is not None else b.tvar
                body = ForallM(b.name, ty, body)
        return body

    def _atom_rest(self, sem) -> Assert:
        ts = self.ts
        ts.expect("LEADSTO", what="'~'")
        if ts.accept("("):
            ty = read_type(ts)
            ts.expect(")")
        else:
            ty = read_type(ts)
        start = ts.peek
        reader = TermReader(ts, self.signature, self.glue, self._meaning_use)
        meaning = reader.read()
        try:
            got = self.inference.infer(meaning)
        except MeaningTypeError as exc:
            raise GlueSyntaxError(str(exc), ts.text, start.pos) from None
        if not self.inference.unify(got, ty):
            raise GlueSyntaxError(
                f"meaning has type {self.inference.resolve(got)} but is indexed {ty}",
                ts.text,
                start.pos,
            )
        return Assert(sem, ty, meaning)

    def _meaning_use(self, name, tok):
        self.scope[name].meaning_uses += 1

    # ---- σ-terms

    def _sem(self):
        ts = self.ts
        if ts.at_keyword("s") and ts.peek_at(1).kind == "(":
            ts.next()
            ts.next()
            fterm = self._fterm()
            while ts.at("IDENT"):
                fterm = FSelect(fterm, ts.next().value)
            ts.expect(")")
            return Proj(fterm)
        if ts.accept("("):
            base = self._sem()
            attr = ts.expect("IDENT", what="an attribute")
            if attr.value not in SIGMA_ATTRIBUTES:
                ts.error(f"unknown semantic-structure attribute {attr.value!r}", attr)
            ts.expect(")")
            return Select(base, attr.value)
        tok = ts.expect("IDENT", what="a semantic structure")
        if tok.value in ("forall",):
            ts.error("unexpected 'forall'", tok)
        binder = self.scope.get(tok.value)
        if binder is None:
            ts.error(f"unbound variable {tok.value!r}", tok)
        binder.sem_uses += 1
        return HVar(tok.value)

    def _fterm(self):
        ts = self.ts
        if ts.accept("UP"):
            return Up()
        if ts.accept("("):
            base = self._fterm()
            attr = ts.expect("IDENT", what="an attribute").value
            ts.expect(")")
            return FSelect(base, attr)
        return FLabel(ts.expect("IDENT", what="an f-structure").value)

    # ---- type resolution

    def _finish(self, f: Formula, start) -> Formula:
        inf = self.inference

        def fix_type(ty, what):
            ty = inf.resolve(ty)
            if not is_ground(ty):
                raise GlueSyntaxError(f"cannot determine the type of {what}", self.ts.text, start.pos)
            return ty

        def fix_term(term):
            match term:
                case GlueVar(name, kind, ty):
                    return GlueVar(name, kind, fix_type(ty, name))
                case App(a, b):
                    return App(fix_term(a), fix_term(b))
                case Lam(v, body, ty):
                    return Lam(v, fix_term(body), None if ty is None else fix_type(ty, v))
            return term

        def fix(g):
            match g:
                case Assert(sem, ty, meaning):
                    return Assert(sem, ty, fix_term(meaning))
                case Tensor(a, b):
                    return Tensor(fix(a), fix(b))
                case Lollipop(a, b):
                    return Lollipop(fix(a), fix(b))
                case ForallM(v, ty, body):
                    return ForallM(v, fix_type(ty, v), fix(body))
                case ForallS(v, body):
                    return ForallS(v, fix(body))

        return fix(f)


# ---------------------------------------------------------------- lexicon


@dataclass(frozen=True)
class LexicalEntry:
    word: str
    category: str
    equations: tuple[Equation, ...]
    glue: Formula

    def __str__(self):
        eqs = "; ".join(str(e) for e in self.equations)
        return f'entry "{self.word}" {self.category} {{ {eqs}; glue: {self.glue} }}'

    def features(self) -> list[tuple[str, Atom]]:
        """``(ATTR, atom)`` pairs fixed on ``^`` by this entry."""
        return [
            (e.lhs.attrs[0], e.rhs)
            for e in self.equations
            if e.lhs.root == "^" and len(e.lhs.attrs) == 1 and isinstance(e.rhs, Atom)
        ]


@dataclass
class Lexicon:
    signature: dict[str, object] = field(default_factory=dict)
    entries: list[LexicalEntry] = field(default_factory=list)

    def lookup(self, word: str) -> list[LexicalEntry]:
        found = [e for e in self.entries if e.word == word]
        if not found:
            found = [e for e in self.entries if e.word.lower() == word.lower()]
        return found

    def words(self) -> list[str]:
        return sorted({e.word for e in self.entries})


def load_lexicon(path) -> Lexicon:
    return parse_lexicon(FilePath(path).read_text(encoding="utf-8"))


def parse_lexicon(text: str) -> Lexicon:
    """Read ``signature { c : type ... }`` and ``entry "w" CAT { ... }`` blocks.

    Every glue template is checked against the tensor fragment here.
    """
    ts = TokenStream(text)
    lex = Lexicon()
    while not ts.at("EOF"):
        if ts.at_keyword("signature"):
            ts.next()
            ts.expect("{")
            while not ts.accept("}"):
                name = ts.expect("IDENT", what="a constant").value
                ts.expect(":")
                lex.signature[name] = read_type(ts)
                ts.accept(";")
        elif ts.at_keyword("entry"):
            lex.entries.append(_read_entry(ts, lex.signature))
        else:
            ts.error(f"expected 'signature' or 'entry', found {ts.peek.value!r}")
    return lex


def _read_entry(ts: TokenStream, signature) -> LexicalEntry:
    head = ts.next()
    word_tok = ts.expect("STRING", what="a quoted word")
    word = word_tok.value[1:-1]
    category = ts.expect("IDENT", what="a category").value
    ts.expect("{")
    equations = []
    glue = None
    while not ts.accept("}"):
        if ts.at_keyword("glue") and ts.peek_at(1).kind == ":":
            ts.next()
            ts.next()
            start = ts.peek
            glue = GlueReader(ts, signature).read_formula()
            try:
                check_fragment(glue)
            except FragmentError as exc:
                raise GlueSyntaxError(f"entry {word!r}: {exc}", ts.text, start.pos) from None
            _check_up_only(glue, ts, start)
            ts.accept(";")
        else:
            equations.append(read_equation(ts))
            ts.accept(";")
    if glue is None:
        ts.error(f"entry {word!r} has no glue contribution", head)
    return LexicalEntry(word, category, tuple(equations), glue)


def _check_up_only(glue: Formula, ts, start):
    from .formulas import atoms

    def root(fterm):
        while isinstance(fterm, FSelect):
            fterm = fterm.base
        return fterm

    def sem_root(sem):
        while isinstance(sem, Select):
            sem = sem.base
        return sem

    for a in atoms(glue):
        s = sem_root(a.sem)
        if isinstance(s, Proj) and not isinstance(root(s.fterm), Up):
            raise GlueSyntaxError("lexical glue may only mention ^-rooted f-structures", ts.text, start.pos)


def read_equation(ts: TokenStream) -> Equation:
    """``(^ ATTR ...) = 'atom' | BARE | path`` with ``^``/``!`` metavariables."""
    lhs = _read_path(ts)
    ts.expect("=")
    if ts.at("STRING"):
        return Equation(lhs, Atom(ts.next().value[1:-1]))
    if ts.at("(") or ts.at("UP") or ts.at("DOWN"):
        return Equation(lhs, _read_path(ts))
    tok = ts.expect("IDENT", what="a value")
    return Equation(lhs, Atom(tok.value, quoted=False))


def _read_path(ts: TokenStream) -> Path:
    if ts.accept("("):
        root = _read_root(ts)
        attrs = []
        while ts.at("IDENT"):
            attrs.append(ts.next().value)
        ts.expect(")")
        if not attrs:
            ts.error("empty attribute path")
        return Path(root, tuple(attrs))
    return Path(_read_root(ts))


def _read_root(ts: TokenStream) -> str:
    if ts.accept("UP"):
        return "^"
    if ts.accept("DOWN"):
        return "!"
    return ts.expect("IDENT", what="a node label").value
