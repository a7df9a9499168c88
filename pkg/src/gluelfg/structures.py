"""F-structures, their equation solver, and the semantic projection.

An f-structure is a finite graph of labelled nodes whose attributes hold
either atoms (``'appoint'``, ``PAST``) or references to other nodes.
``solve_equations`` builds the least such graph satisfying a set of
path equations, merging nodes that are equated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from ._lexer import ParseError, TokenStream

SIGMA_ATTRIBUTES = ("VAR", "RESTR", "ANT")
LAZY_SIGMA_ATTRIBUTES = ("VAR", "RESTR")


class StructureError(Exception):
    """``kind`` is ``clash``, ``cycle``, ``missing-attribute`` or ``unknown-attribute``."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


@dataclass(frozen=True)
class Atom:
    value: str
    quoted: bool = True

    def __str__(self):
        return f"'{self.value}'" if self.quoted else self.value


@dataclass(frozen=True)
class NodeRef:
    label: str

    def __str__(self):
        return self.label


FValue = Union[Atom, NodeRef]


@dataclass(frozen=True)
class Path:
    """A node label (or ``^``/``!`` in templates) followed by attributes."""

    root: str
    attrs: tuple[str, ...] = ()

    def __str__(self):
        if not self.attrs:
            return self.root
        return f"({self.root} {' '.join(self.attrs)})"

    def with_root(self, root: str) -> "Path":
        return Path(root, self.attrs)


@dataclass(frozen=True)
class Equation:
    lhs: Path
    rhs: Union[Path, Atom]

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"

    def substitute(self, mapping: Mapping[str, str]) -> "Equation":
        """Replace metavariable roots using ``mapping``."""
        lhs = self.lhs.with_root(mapping.get(self.lhs.root, self.lhs.root))
        rhs = self.rhs
        if isinstance(rhs, Path):
            rhs = rhs.with_root(mapping.get(rhs.root, rhs.root))
        return Equation(lhs, rhs)


# ---------------------------------------------------------------- f-structures


@dataclass(frozen=True)
class FStructure:
    """A solved, frozen f-structure graph.

    ``aliases`` maps every label that was ever mentioned (including ones
    merged away) to the label of the node it ended up as.
    """

    nodes: Mapping[str, Mapping[str, FValue]]
    root: str
    aliases: Mapping[str, str] = field(default_factory=dict)

    def find(self, label: str) -> str:
        label = self.aliases.get(label, label)
        if label not in self.nodes:
            raise StructureError("missing-attribute", f"no f-structure node {label!r}")
        return label

    def attrs(self, label: str) -> Mapping[str, FValue]:
        return self.nodes[self.find(label)]

    def get(self, label: str, *attrs: str) -> FValue:
        return get_path(self, label, attrs)

    def labels(self) -> list[str]:
        return list(self.nodes)

    def __str__(self):
        return format_fstructure(self)


def get_path(fs: FStructure, label: str, path: Iterable[str] = ()) -> FValue:
    """Value reached from node ``label`` by following ``path``."""
    value: FValue = NodeRef(fs.find(label))
    walked = [value.label]
    for attr in path:
        if not isinstance(value, NodeRef):
            raise StructureError("missing-attribute", f"{attr} under atom {value}")
        attrs = fs.nodes[value.label]
        if attr not in attrs:
            raise StructureError(
                "missing-attribute", f"({' '.join(walked)} {attr}) is not defined"
            )
        value = attrs[attr]
        walked.append(attr)
    return value


class _Solver:
    def __init__(self):
        self.parent: dict[str, str] = {}
        self.order: dict[str, tuple[int, int]] = {}
        self.attrs: dict[str, dict[str, object]] = {}
        self.generated = 0

    def node(self, label: str, generated: bool = False) -> str:
        if label not in self.parent:
            self.parent[label] = label
            self.order[label] = (1 if generated else 0, len(self.order))
            self.attrs[label] = {}
        return self.find(label)

    def find(self, label: str) -> str:
        root = label
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[label] != root:
            self.parent[label], label = root, self.parent[label]
        return root

    def fresh(self) -> str:
        self.generated += 1
        return self.node(f"_{self.generated}", generated=True)

    def value_at(self, path: Path, create: bool):
        if path.root in ("^", "!", "↑", "↓"):
            raise StructureError("clash", f"unresolved metavariable in {path}")
        node = self.node(path.root)
        for attr in path.attrs:
            val = self.attrs[node].get(attr)
            if val is None:
                if not create:
                    return None
                val = self.fresh()
                self.attrs[node][attr] = val
            if isinstance(val, Atom):
                raise StructureError("clash", f"{path} passes through atom {val}")
            node = self.find(val)
        return node

    def assert_equation(self, eq: Equation):
        if isinstance(eq.rhs, Atom):
            if not eq.lhs.attrs:
                raise StructureError("clash", f"node {eq.lhs.root} equated with atom {eq.rhs}")
            owner = self.value_at(Path(eq.lhs.root, eq.lhs.attrs[:-1]), create=True)
            attr = eq.lhs.attrs[-1]
            self.set_value(owner, attr, eq.rhs, eq)
        else:
            a = self.value_at(eq.lhs, create=True)
            b = self.value_at(eq.rhs, create=True)
            self.merge(a, b, eq)

    def set_value(self, owner: str, attr: str, value, eq):
        current = self.attrs[owner].get(attr)
        if current is None:
            self.attrs[owner][attr] = value
        elif isinstance(current, Atom) or isinstance(value, Atom):
            if current != value:
                raise StructureError(
                    "clash", f"attribute {attr} of {owner} is both {_show(current)} and {_show(value)} ({eq})"
                )
        else:
            self.merge(self.find(current), self.find(value), eq)

    def merge(self, a: str, b: str, eq):
        work = [(a, b)]
        while work:
            a, b = work.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            keep, drop = (a, b) if self.order[a] <= self.order[b] else (b, a)
            self.parent[drop] = keep
            for attr, val in self.attrs.pop(drop).items():
                current = self.attrs[keep].get(attr)
                if current is None:
                    self.attrs[keep][attr] = val
                elif isinstance(current, Atom) or isinstance(val, Atom):
                    if current != val:
                        raise StructureError(
                            "clash",
                            f"attribute {attr} of {keep} is both {_show(current)} and {_show(val)} ({eq})",
                        )
                else:
                    work.append((current, val))

    def freeze(self, root: str | None) -> FStructure:
        labels = sorted(self.parent, key=lambda l: self.order[l])
        nodes = {}
        for label in labels:
            rep = self.find(label)
            if rep != label or rep in nodes:
                continue
            values = {}
            for attr, val in self.attrs[rep].items():
                values[attr] = val if isinstance(val, Atom) else NodeRef(self.find(val))
            nodes[rep] = values
        aliases = {label: self.find(label) for label in labels}
        if root is None:
            root = labels[0] if labels else "f"
        root = aliases.get(root, root)
        if root not in nodes:
            nodes[root] = {}
        fs = FStructure(nodes, root, aliases)
        _check_acyclic(fs)
        return fs


def _show(v) -> str:
    return str(v) if isinstance(v, Atom) else f"node {v}"


def _check_acyclic(fs: FStructure):
    state: dict[str, int] = {}
    for start in fs.nodes:
        if state.get(start):
            continue
        stack = [(start, iter(fs.nodes[start].values()))]
        state[start] = 1
        while stack:
            label, it = stack[-1]
            for val in it:
                if isinstance(val, NodeRef):
                    s = state.get(val.label, 0)
                    if s == 1:
                        raise StructureError("cycle", f"node {val.label} contains itself")
                    if s == 0:
                        state[val.label] = 1
                        stack.append((val.label, iter(fs.nodes[val.label].values())))
                        break
            else:
                state[label] = 2
                stack.pop()


def solve_equations(equations: Iterable[Equation], root: str | None = None) -> FStructure:
    """Least f-structure satisfying ``equations``.

    Raises ``StructureError`` (``clash`` or ``cycle``).
    """
    solver = _Solver()
    for eq in equations:
        solver.assert_equation(eq)
    if root is not None:
        solver.node(root)
    return solver.freeze(root)


def isomorphic(a: FStructure, b: FStructure) -> bool:
    """Structural equality up to node renaming, starting from the roots."""
    mapping: dict[str, str] = {}
    back: dict[str, str] = {}
    work = [(a.root, b.root)]
    while work:
        x, y = work.pop()
        if x in mapping or y in back:
            if mapping.get(x) != y or back.get(y) != x:
                return False
            continue
        mapping[x], back[y] = y, x
        ax, by = a.nodes[x], b.nodes[y]
        if ax.keys() != by.keys():
            return False
        for attr, vx in ax.items():
            vy = by[attr]
            if isinstance(vx, Atom) or isinstance(vy, Atom):
                if vx != vy:
                    return False
            else:
                work.append((vx.label, vy.label))
    return True


# ---------------------------------------------------------------- text format


def format_fstructure(fs: FStructure, label: str | None = None) -> str:
    """``f:[PRED 'appoint'; SUBJ g:[PRED 'Bill']]``; a node met again
    prints as ``g:[]``."""
    seen: set[str] = set()

    def show(lab: str) -> str:
        if lab in seen:
            return f"{lab}:[]"
        seen.add(lab)
        parts = []
        for attr, val in fs.nodes[lab].items():
            parts.append(f"{attr} {show(val.label) if isinstance(val, NodeRef) else val}")
        return f"{lab}:[{'; '.join(parts)}]"

    return show(fs.find(label or fs.root))


@dataclass(frozen=True)
class SigmaLink:
    """``(source σ attr) = target σ``, e.g. ``(iσ ANT) = gσ``."""

    source: str
    attr: str
    target: str

    def __str__(self):
        return f"slink ({self.source} {self.attr}) = {self.target}"


def parse_fstructure(text: str) -> tuple[FStructure, list[SigmaLink]]:
    """Read the f-structure text format plus any ``slink`` lines."""
    ts = TokenStream(text)
    equations: list[Equation] = []
    links: list[SigmaLink] = []
    root = None
    while not ts.at("EOF"):
        if ts.at_keyword("slink"):
            ts.next()
            ts.expect("(")
            src = ts.expect("IDENT", what="a node label").value
            attr = ts.expect("IDENT", what="an attribute").value
            ts.expect(")")
            ts.expect("=")
            dst = ts.expect("IDENT", what="a node label").value
            if attr not in SIGMA_ATTRIBUTES:
                ts.error(f"unknown semantic-structure attribute {attr!r}")
            links.append(SigmaLink(src, attr, dst))
            continue
        label = _read_structure(ts, equations)
        if root is None:
            root = label
    if root is None:
        raise ParseError("no f-structure found", text, 0)
    return solve_equations(equations, root), links


def _read_structure(ts: TokenStream, equations: list[Equation]) -> str:
    label = ts.expect("IDENT", what="a node label").value
    ts.expect(":")
    ts.expect("[")
    equations.append(Equation(Path(label), Path(label)))
    if not ts.at("]"):
        while True:
            attr = ts.expect("IDENT", what="an attribute").value
            if ts.at("STRING"):
                equations.append(Equation(Path(label, (attr,)), Atom(ts.next().value[1:-1])))
            elif ts.at("IDENT") and ts.peek_at(1).kind == ":":
                child = _read_structure(ts, equations)
                equations.append(Equation(Path(label, (attr,)), Path(child)))
            else:
                tok = ts.expect("IDENT", what="a value")
                equations.append(Equation(Path(label, (attr,)), Atom(tok.value, quoted=False)))
            if not ts.accept(";"):
                break
    ts.expect("]")
    return label


# ---------------------------------------------------------------- σ-structures


@dataclass(frozen=True, order=True)
class SigmaNode:
    """A semantic-structure node: the projection of f-node ``label``
    followed by VAR/RESTR selections."""

    label: str
    attrs: tuple[str, ...] = ()

    def __str__(self):
        text = f"s({self.label})"
        for attr in self.attrs:
            text = f"({text} {attr})"
        return text

    @property
    def display(self) -> str:
        text = f"{self.label}σ"
        for attr in self.attrs:
            text = f"({text} {attr})"
        return text


class SigmaStructure:
    """Semantic structures projected from one f-structure.

    VAR and RESTR children are created on first reference; ANT values are
    set only through ``add_link``.  Mutable while an analysis is being
    built, read-only afterwards by convention.
    """

    def __init__(self, fstructure: FStructure):
        self.fstructure = fstructure
        self._nodes: dict[SigmaNode, dict[str, SigmaNode]] = {}

    def project(self, label: str) -> SigmaNode:
        node = SigmaNode(self.fstructure.find(label))
        self._nodes.setdefault(node, {})
        return node

    def select(self, node: SigmaNode, attr: str) -> SigmaNode:
        if attr not in SIGMA_ATTRIBUTES:
            raise StructureError("unknown-attribute", f"{attr} is not a semantic-structure attribute")
        children = self._nodes.setdefault(node, {})
        if attr in children:
            return children[attr]
        if attr not in LAZY_SIGMA_ATTRIBUTES:
            raise StructureError("missing-attribute", f"({node.display} {attr}) is not defined")
        child = SigmaNode(node.label, node.attrs + (attr,))
        children[attr] = child
        self._nodes.setdefault(child, {})
        return child

    def add_link(self, node: SigmaNode, attr: str, value: SigmaNode):
        if attr not in SIGMA_ATTRIBUTES:
            raise StructureError("unknown-attribute", f"{attr} is not a semantic-structure attribute")
        children = self._nodes.setdefault(node, {})
        current = children.get(attr)
        if current is not None and current != value:
            raise StructureError(
                "clash", f"({node.display} {attr}) is already {current.display}, not {value.display}"
            )
        children[attr] = value
        self._nodes.setdefault(value, {})

    def nodes(self) -> list[SigmaNode]:
        return list(self._nodes)

    def links(self) -> dict[SigmaNode, dict[str, SigmaNode]]:
        return {n: dict(c) for n, c in self._nodes.items()}


def sigma_project(sigma: SigmaStructure, label: str) -> SigmaNode:
    return sigma.project(label)


def add_sigma_link(sigma: SigmaStructure, source: SigmaNode, attr: str, value: SigmaNode) -> SigmaStructure:
    sigma.add_link(source, attr, value)
    return sigma


@dataclass
class Analysis:
    """An f-structure with its semantic projection."""

    fstructure: FStructure
    sigma: SigmaStructure

    @classmethod
    def of(cls, fstructure: FStructure, links: Iterable[SigmaLink] = ()) -> "Analysis":
        sigma = SigmaStructure(fstructure)
        for link in links:
            sigma.add_link(sigma.project(link.source), link.attr, sigma.project(link.target))
        return cls(fstructure, sigma)
