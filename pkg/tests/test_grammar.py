import pytest

from gluelfg._lexer import ParseError
from gluelfg.glue import format_glue, parse_lexicon
from gluelfg.grammar import (
    GrammarError,
    build_fstructure,
    collect_premises,
    parse_cstructure,
    parse_rules,
    tokenize_sentence,
)
from gluelfg.structures import Atom, format_fstructure, get_path, isomorphic, parse_fstructure


def parse(sentence, lexicon, rules):
    return parse_cstructure(tokenize_sentence(sentence), rules, lexicon)


@pytest.mark.parametrize(
    "sentence, bracket",
    [
        ("Bill appointed Hillary.", "S(NP(Bill), VP(V(appointed), NP(Hillary)))"),
        ("Bill convinced every voter.", "S(NP(Bill), VP(V(convinced), NP(Det(every), N(voter))))"),
        (
            "Every candidate appointed a manager.",
            "S(NP(Det(Every), N(candidate)), VP(V(appointed), NP(Det(a), N(manager))))",
        ),
    ],
)
def test_single_tree(sentence, bracket, lexicon, rules):
    (tree,) = parse(sentence, lexicon, rules)
    assert tree.bracket() == bracket
    assert [leaf.word for leaf in tree.leaves()] == tokenize_sentence(sentence)


@pytest.mark.parametrize(
    "sentence, expected",
    [
        ("Bill appointed Hillary.", "f:[PRED 'appoint'; TENSE PAST; SUBJ g:[PRED 'Bill']; OBJ h:[PRED 'Hillary']]"),
        (
            "Bill convinced every voter.",
            "f:[PRED 'convince'; TENSE PAST; SUBJ g:[PRED 'Bill']; OBJ h:[SPEC 'every'; PRED 'voter']]",
        ),
        (
            "Every candidate appointed a manager.",
            "f:[PRED 'appoint'; TENSE PAST; SUBJ g:[SPEC 'every'; PRED 'candidate'];"
            " OBJ h:[SPEC 'a'; PRED 'manager']]",
        ),
    ],
)
def test_fstructure_matches_hand_analysis(sentence, expected, lexicon, rules):
    (tree,) = parse(sentence, lexicon, rules)
    analysis, _ = build_fstructure(tree)
    hand, _ = parse_fstructure(expected)
    assert isomorphic(analysis.fstructure, hand), format_fstructure(analysis.fstructure)


def test_occurrences_point_at_their_nodes(lexicon, rules):
    (tree,) = parse("Every candidate appointed a manager.", lexicon, rules)
    analysis, occurrences = build_fstructure(tree)
    fs = analysis.fstructure
    by_word = {o.word: o.node for o in occurrences}
    assert by_word["Every"] == by_word["candidate"] == get_path(fs, fs.root, ["SUBJ"]).label
    assert by_word["appointed"] == fs.root
    assert by_word["a"] == get_path(fs, fs.root, ["OBJ"]).label
    assert [o.position for o in occurrences] == list(range(5))


@pytest.mark.parametrize(
    "sentence, count",
    [
        ("Bill appointed Hillary.", 3),
        ("Bill convinced every voter.", 4),
        ("Every candidate appointed a manager.", 5),
        ("Bill appointed Bill.", 3),
    ],
)
def test_one_premise_per_word(sentence, count, lexicon, rules):
    (tree,) = parse(sentence, lexicon, rules)
    premises, goal = collect_premises(*build_fstructure(tree))
    assert len(premises) == count
    assert [p.index for p in premises] == list(range(count))
    assert format_glue(goal) == f"s({goal.sem.label}) ~t M"


def test_repeated_word_gives_distinct_premises(lexicon, rules):
    (tree,) = parse("Bill appointed Bill.", lexicon, rules)
    premises, _ = collect_premises(*build_fstructure(tree))
    bills = [p for p in premises if p.origin.startswith("Bill@")]
    assert len(bills) == 2
    assert bills[0].formula != bills[1].formula
    assert bills[0].index != bills[1].index


@pytest.mark.parametrize("sentence", ["Hillary Hillary", "appointed Bill Hillary", "Bill appointed"])
def test_no_parse(sentence, lexicon, rules):
    with pytest.raises(GrammarError) as info:
        parse(sentence, lexicon, rules)
    assert info.value.kind == "no-parse"


def test_empty_sentence(lexicon, rules):
    with pytest.raises(GrammarError) as info:
        parse(".", lexicon, rules)
    assert info.value.kind == "no-parse"


def test_unknown_word(lexicon, rules):
    with pytest.raises(GrammarError) as info:
        parse("Bill appointed Nixon", lexicon, rules)
    assert info.value.kind == "unknown-word"
    assert "Nixon" in str(info.value)


def test_rule_order_does_not_matter(lexicon, rules):
    sentence = "Every candidate appointed a manager."
    forward = [t.bracket() for t in parse_cstructure(tokenize_sentence(sentence), rules, lexicon)]
    backward = [t.bracket() for t in parse_cstructure(tokenize_sentence(sentence), rules[::-1], lexicon)]
    assert forward == backward


def test_structural_ambiguity_gives_sorted_trees():
    lex = parse_lexicon(
        """
        signature { Bill : e  saw : e -> e -> t }
        entry "Bill" NP { (^ PRED) = 'Bill'  glue: s(^) ~e Bill }
        entry "saw" V { (^ PRED) = 'see'  glue: forall X, Y. s(^ SUBJ) ~e X * s(^ OBJ) ~e Y -o s(^) ~t saw(X, Y) }
        """
    )
    rules = parse_rules(
        """
        rule S -> NP {(^ SUBJ) = !} VP {^ = !}
        rule VP -> V {^ = !} NP {(^ OBJ) = !}
        rule S -> NP {(^ SUBJ) = !} V {^ = !} NP {(^ OBJ) = !}
        """
    )
    trees = parse_cstructure(["Bill", "saw", "Bill"], rules, lex)
    brackets = [t.bracket() for t in trees]
    assert brackets == sorted(brackets) and len(brackets) == 2
    first, second = (build_fstructure(t)[0].fstructure for t in trees)
    assert isomorphic(first, second)


def test_lexical_clash_is_a_structure_error(lexicon):
    from gluelfg.structures import StructureError

    rules = parse_rules("rule S -> NP {^ = !} NP {^ = !}")
    (tree,) = parse_cstructure(["Bill", "Hillary"], rules, lexicon)
    with pytest.raises(StructureError) as info:
        build_fstructure(tree)
    assert info.value.kind == "clash"


def test_tokenizer():
    assert tokenize_sentence("Bill appointed Hillary.") == ["Bill", "appointed", "Hillary"]
    assert tokenize_sentence("  Bill   appointed Hillary . ") == ["Bill", "appointed", "Hillary"]
    assert tokenize_sentence("") == []


@pytest.mark.parametrize(
    "text",
    [
        "rule S -> NP {(^ SUBJ) = (! PRED)}",
        "rule S ->",
        "rule S -> NP",
        "S -> NP {^ = !}",
    ],
)
def test_bad_rules(text):
    with pytest.raises(ParseError):
        parse_rules(text)


def test_rule_printing_round_trip(rules):
    assert parse_rules("\n".join(str(r) for r in rules)) == rules
    assert rules[0].rhs[0].function == "SUBJ" and rules[0].rhs[1].function is None


def test_tense_is_unquoted(lexicon, rules):
    (tree,) = parse("Bill appointed Hillary.", lexicon, rules)
    fs = build_fstructure(tree)[0].fstructure
    assert get_path(fs, fs.root, ["TENSE"]) == Atom("PAST", quoted=False)
