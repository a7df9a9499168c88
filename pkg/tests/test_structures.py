import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gluelfg._lexer import ParseError
from gluelfg.structures import (
    Analysis,
    Atom,
    Equation,
    NodeRef,
    Path,
    SigmaLink,
    SigmaNode,
    StructureError,
    format_fstructure,
    get_path,
    isomorphic,
    parse_fstructure,
    solve_equations,
)

from conftest import FIXTURES


def eq(lhs, rhs):
    root, *attrs = lhs.split()
    if isinstance(rhs, str) and rhs.startswith("'"):
        rhs = Atom(rhs.strip("'"))
    elif isinstance(rhs, str):
        r, *ra = rhs.split()
        rhs = Path(r, tuple(ra))
    return Equation(Path(root, tuple(attrs)), rhs)


SENTENCE_EQUATIONS = [
    eq("f SUBJ", "g"),
    eq("g PRED", "'Bill'"),
    eq("f", "h"),
    eq("h PRED", "'appoint'"),
    eq("h OBJ", "k"),
    eq("k PRED", "'Hillary'"),
]


def test_solve_builds_the_least_structure():
    fs = solve_equations(SENTENCE_EQUATIONS, "f")
    assert get_path(fs, "f", ["PRED"]) == Atom("appoint")
    assert get_path(fs, "f", ["SUBJ", "PRED"]) == Atom("Bill")
    assert get_path(fs, "h", ["OBJ", "PRED"]) == Atom("Hillary")
    assert fs.find("h") == fs.find("f")
    assert len(fs.labels()) == 3


def test_clash_is_reported():
    with pytest.raises(StructureError) as info:
        solve_equations([eq("f PRED", "'appoint'"), eq("f PRED", "'convince'")], "f")
    assert info.value.kind == "clash"


def test_clash_through_unification():
    equations = [eq("f SUBJ", "g"), eq("f OBJ", "h"), eq("g PRED", "'Bill'"), eq("h PRED", "'Hillary'"), eq("g", "h")]
    with pytest.raises(StructureError) as info:
        solve_equations(equations, "f")
    assert info.value.kind == "clash"


def test_atom_versus_structure_clash():
    with pytest.raises(StructureError) as info:
        solve_equations([eq("f SUBJ", "g"), eq("f SUBJ", "'Bill'")], "f")
    assert info.value.kind == "clash"


def test_cycle_is_rejected():
    with pytest.raises(StructureError) as info:
        solve_equations([eq("f SUBJ", "g"), eq("g OBJ", "f")], "f")
    assert info.value.kind == "cycle"


def test_missing_path():
    fs = solve_equations(SENTENCE_EQUATIONS, "f")
    with pytest.raises(StructureError) as info:
        get_path(fs, "f", ["SUBJ", "SPEC"])
    assert info.value.kind == "missing-attribute"
    with pytest.raises(StructureError):
        get_path(fs, "f", ["PRED", "X"])


def test_get_path_empty_returns_node():
    fs = solve_equations(SENTENCE_EQUATIONS, "f")
    assert get_path(fs, "h") == NodeRef(fs.find("f"))


def test_solution_does_not_depend_on_equation_order():
    base = solve_equations(SENTENCE_EQUATIONS, "f")
    rng = random.Random(7)
    for _ in range(20):
        shuffled = SENTENCE_EQUATIONS[:]
        rng.shuffle(shuffled)
        assert isomorphic(solve_equations(shuffled, "f"), base)


@settings(max_examples=60, deadline=None)
@given(st.permutations(SENTENCE_EQUATIONS), st.permutations(["f", "g", "h", "k"]))
def test_renaming_and_reordering_give_isomorphic_structures(equations, names):
    rename = dict(zip(["f", "g", "h", "k"], names))
    renamed = [e.substitute(rename) for e in equations]
    assert isomorphic(solve_equations(renamed, rename["f"]), solve_equations(SENTENCE_EQUATIONS, "f"))


def test_isomorphism_detects_differences():
    a = solve_equations(SENTENCE_EQUATIONS, "f")
    b = solve_equations(SENTENCE_EQUATIONS[:-1] + [eq("k PRED", "'Bill'")], "f")
    assert not isomorphic(a, b)


def test_reentrancy_is_preserved():
    fs = solve_equations([eq("f SUBJ", "g"), eq("f OBJ", "g"), eq("g PRED", "'Bill'")], "f")
    assert get_path(fs, "f", ["SUBJ"]) == get_path(fs, "f", ["OBJ"])


# ---------------------------------------------------------------- text format


def test_parse_fixture_fstructure():
    fs, links = parse_fstructure((FIXTURES / "admirer.fs").read_text())
    assert fs.root == "f"
    assert get_path(fs, "f", ["OBJ", "OBL_OF", "PRED"]) == Atom("pro")
    assert get_path(fs, "f", ["TENSE"]) == Atom("PAST", quoted=False)
    assert links == [SigmaLink("i", "ANT", "g")]


def test_format_parse_round_trip():
    fs, _ = parse_fstructure((FIXTURES / "admirer.fs").read_text())
    again, _ = parse_fstructure(format_fstructure(fs))
    assert isomorphic(fs, again)


@pytest.mark.parametrize("text", ["f:[PRED 'x'", "f:[PRED]", "slink (i FOO) = g\nf:[]", ""])
def test_bad_fstructure_text(text):
    with pytest.raises(ParseError):
        parse_fstructure(text)


# ---------------------------------------------------------------- semantic projection


@pytest.fixture
def admirer():
    fs, links = parse_fstructure((FIXTURES / "admirer.fs").read_text())
    return fs, links


def test_projection_is_a_function(admirer):
    fs, _ = admirer
    a = Analysis.of(fs)
    assert a.sigma.project("f") is not None
    assert a.sigma.project("f") == a.sigma.project("f")
    assert a.sigma.project("g") != a.sigma.project("h")


def test_var_and_restr_are_created_on_demand(admirer):
    fs, _ = admirer
    sigma = Analysis.of(fs).sigma
    g = sigma.project("g")
    assert len(sigma.nodes()) == 1
    var = sigma.select(g, "VAR")
    assert var == SigmaNode("g", ("VAR",))
    assert sigma.select(g, "VAR") == var
    assert sigma.select(g, "RESTR") != var
    assert len(sigma.nodes()) == 3


def test_ant_must_be_linked(admirer):
    fs, links = admirer
    bare = Analysis.of(fs).sigma
    with pytest.raises(StructureError) as info:
        bare.select(bare.project("i"), "ANT")
    assert info.value.kind == "missing-attribute"
    linked = Analysis.of(fs, links).sigma
    assert linked.select(linked.project("i"), "ANT") == linked.project("g")


def test_links_are_idempotent_and_clash_checked(admirer):
    fs, _ = admirer
    sigma = Analysis.of(fs).sigma
    i, g, h = sigma.project("i"), sigma.project("g"), sigma.project("h")
    sigma.add_link(i, "ANT", g)
    sigma.add_link(i, "ANT", g)
    assert sigma.select(i, "ANT") == g
    with pytest.raises(StructureError) as info:
        sigma.add_link(i, "ANT", h)
    assert info.value.kind == "clash"


def test_unknown_semantic_attribute(admirer):
    fs, _ = admirer
    sigma = Analysis.of(fs).sigma
    with pytest.raises(StructureError) as info:
        sigma.select(sigma.project("f"), "SUBJ")
    assert info.value.kind == "unknown-attribute"


def test_sigma_node_printing():
    node = SigmaNode("g", ("VAR",))
    assert str(node) == "(s(g) VAR)"
    assert node.display == "(gσ VAR)"
