from importlib.resources import files

import pytest

from gluelfg.glue.syntax import load_lexicon
from gluelfg.grammar import build_fstructure, collect_premises, load_rules, parse_cstructure, tokenize_sentence
from gluelfg.interpret import select_entries
from gluelfg.structures import Analysis, parse_fstructure

FIXTURES = files("gluelfg") / "fixtures"

SENTENCES = [line for line in (FIXTURES / "corpus.txt").read_text().splitlines() if line.strip()]
FSTRUCTURE_FILES = ["admirer.fs", "admirer_mary.fs"]


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(FIXTURES / "example.lex")


@pytest.fixture(scope="session")
def rules():
    return load_rules(FIXTURES / "example.grammar")


@pytest.fixture(scope="session")
def signature(lexicon):
    return lexicon.signature


def sentence_problem(sentence, lexicon, rules):
    """Premises and goal for the single parse of ``sentence``."""
    (tree,) = parse_cstructure(tokenize_sentence(sentence), rules, lexicon)
    analysis, occurrences = build_fstructure(tree)
    return collect_premises(analysis, occurrences)


def fstructure_problem(name, lexicon):
    fs, links = parse_fstructure((FIXTURES / name).read_text())
    analysis = Analysis.of(fs, links)
    return collect_premises(analysis, select_entries(analysis, lexicon))


@pytest.fixture(scope="session")
def corpus(lexicon, rules):
    """Every bundled proof problem, keyed by a short name."""
    problems = {s: sentence_problem(s, lexicon, rules) for s in SENTENCES}
    for name in FSTRUCTURE_FILES:
        problems[name] = fstructure_problem(name, lexicon)
    return problems
