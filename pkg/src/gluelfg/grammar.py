"""Annotated phrase-structure rules, c-structure parsing and the mapping
from trees to f-structures and glue premises.

Grammar files hold one rule per ``rule`` keyword::

    rule S -> NP {(^ SUBJ) = !} VP {^ = !}

``^`` is the mother's f-structure and ``!`` the daughter's.  Preterminal
categories come from the lexicon.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path as FilePath
from typing import Union

from ._lexer import TokenStream
from .glue.formulas import Assert
from .glue.instantiate import Premise, instantiate_entry
from .glue.syntax import LexicalEntry, Lexicon, read_equation
from .prover import goal_for
from .structures import Analysis, Equation, Path, solve_equations


class GrammarError(Exception):
    """``kind`` is ``unknown-word`` or ``no-parse``."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


# ---------------------------------------------------------------- rules


@dataclass(frozen=True)
class Daughter:
    category: str
    annotation: Equation

    @property
    def function(self) -> str | None:
        """The grammatical function for ``(^ F) = !``, ``None`` for ``^ = !``."""
        return self.annotation.lhs.attrs[0] if self.annotation.lhs.attrs else None


@dataclass(frozen=True)
class PhraseRule:
    lhs: str
    rhs: tuple[Daughter, ...]

    def __str__(self):
        parts = " ".join(f"{d.category} {{{d.annotation}}}" for d in self.rhs)
        return f"rule {self.lhs} -> {parts}"


def parse_rules(text: str) -> list[PhraseRule]:
    ts = TokenStream(text)
    rules = []
    while not ts.at("EOF"):
        ts.expect("IDENT", "rule", what="'rule'")
        lhs = ts.expect("IDENT", what="a category").value
        ts.expect("ARROW", what="'->'")
        rhs = []
        while ts.at("IDENT") and not ts.at_keyword("rule"):
            cat = ts.next().value
            ts.expect("{", what="an annotation in braces")
            start = ts.peek
            eq = read_equation(ts)
            ts.expect("}")
            if not _is_daughter_annotation(eq):
                ts.error("annotations must be '^ = !' or '(^ ATTR) = !'", start)
            rhs.append(Daughter(cat, eq))
        if not rhs:
            ts.error(f"rule for {lhs} has no daughters")
        rules.append(PhraseRule(lhs, tuple(rhs)))
    return rules


def _is_daughter_annotation(eq: Equation) -> bool:
    rhs = eq.rhs
    return (
        eq.lhs.root == "^"
        and len(eq.lhs.attrs) <= 1
        and isinstance(rhs, Path)
        and rhs.root == "!"
        and not rhs.attrs
    )


def load_rules(path) -> list[PhraseRule]:
    return parse_rules(FilePath(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------- trees


@dataclass(frozen=True)
class Leaf:
    word: str
    entry: LexicalEntry


@dataclass(frozen=True)
class Tree:
    """A c-structure node.  ``annotations[i]`` is the equation attached to
    daughter ``i``; preterminals have a single ``Leaf`` daughter."""

    category: str
    daughters: tuple[Union["Tree", Leaf], ...]
    annotations: tuple[Equation, ...] = ()

    @property
    def is_preterminal(self) -> bool:
        return len(self.daughters) == 1 and isinstance(self.daughters[0], Leaf)

    def bracket(self) -> str:
        if self.is_preterminal:
            return f"{self.category}({self.daughters[0].word})"
        return f"{self.category}({', '.join(d.bracket() for d in self.daughters)})"

    def leaves(self) -> list[Leaf]:
        if self.is_preterminal:
            return [self.daughters[0]]
        return [leaf for d in self.daughters for leaf in d.leaves()]

    def __str__(self):
        return self.bracket()


def tokenize_sentence(sentence: str) -> list[str]:
    """Whitespace split; a final full stop is dropped."""
    words = sentence.split()
    if words and words[-1].endswith("."):
        words[-1] = words[-1][:-1]
        if not words[-1]:
            words.pop()
    return words


def parse_cstructure(words: list[str], rules: list[PhraseRule], lexicon: Lexicon, start: str = "S") -> list[Tree]:
    """All trees for ``words`` rooted in ``start``, sorted by bracketing."""
    entries = []
    for w in words:
        found = lexicon.lookup(w)
        if not found:
            raise GrammarError("unknown-word", f"{w!r} is not in the lexicon")
        entries.append(found)
    by_lhs: dict[str, list[PhraseRule]] = {}
    for r in rules:
        by_lhs.setdefault(r.lhs, []).append(r)

    memo: dict[tuple[str, int, int], list[Tree]] = {}

    def spans(cat: str, i: int, j: int) -> list[Tree]:
        key = (cat, i, j)
        if key in memo:
            return memo[key]
        memo[key] = []  # guards against unary cycles
        trees = []
        if j == i + 1:
            for e in entries[i]:
                if e.category == cat:
                    trees.append(Tree(cat, (Leaf(words[i], e),)))
        for rule in by_lhs.get(cat, []):
            for daughters in splits(rule.rhs, i, j):
                trees.append(Tree(cat, tuple(daughters), tuple(d.annotation for d in rule.rhs)))
        memo[key] = trees
        return trees

    def splits(rhs, i, j):
        if not rhs:
            if i == j:
                yield []
            return
        first, rest = rhs[0], rhs[1:]
        # every daughter covers at least one word
        for k in range(i + 1, j - len(rest) + 1):
            for t in spans(first.category, i, k):
                for ts in splits(rest, k, j):
                    yield [t] + ts

    if not words:
        raise GrammarError("no-parse", "empty sentence")
    trees = spans(start, 0, len(words))
    if not trees:
        raise GrammarError("no-parse", f"no {start} spans {' '.join(words)!r}")
    return sorted(trees, key=Tree.bracket)


# ---------------------------------------------------------------- f-structures


@dataclass(frozen=True)
class Occurrence:
    """A word token with the f-structure node its entry instantiates at."""

    position: int
    word: str
    entry: LexicalEntry
    node: str


def build_fstructure(tree: Tree) -> tuple[Analysis, list[Occurrence]]:
    """Solve the tree's annotations and lexical equations.

    Tree nodes are labelled ``n1, n2, ...`` in preorder; the f-structure
    keeps the first label of each class.
    """
    equations: list[Equation] = []
    lexical: list[tuple[Leaf, str]] = []
    counter = 0

    def visit(t: Tree) -> str:
        nonlocal counter
        counter += 1
        label = f"n{counter}"
        equations.append(Equation(Path(label), Path(label)))
        if t.is_preterminal:
            leaf = t.daughters[0]
            lexical.append((leaf, label))
            equations.extend(e.substitute({"^": label}) for e in leaf.entry.equations)
            return label
        for d, ann in zip(t.daughters, t.annotations):
            child = visit(d)
            equations.append(ann.substitute({"^": label, "!": child}))
        return label

    root = visit(tree)
    fs = solve_equations(equations, root)
    occurrences = [Occurrence(i, leaf.word, leaf.entry, fs.find(node)) for i, (leaf, node) in enumerate(lexical)]
    return Analysis.of(fs), occurrences


def collect_premises(analysis: Analysis, occurrences: list[Occurrence]) -> tuple[list[Premise], Assert]:
    """One premise per word occurrence, and the goal ``root ~t M``."""
    premises = [instantiate_entry(o.entry, o.node, analysis, i)[1] for i, o in enumerate(occurrences)]
    return premises, goal_for(analysis.sigma.project(analysis.fstructure.root))
