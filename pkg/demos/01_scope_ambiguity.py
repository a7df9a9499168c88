"""
Quantifier scope from proof search
==================================

Parse a sentence, look at its f-structure and glue premises, and let the
prover find every way of combining them.  Two quantified noun phrases give
two readings; nothing in the lexicon lists them separately.
"""

from importlib.resources import files

from gluelfg import analyze_sentence, load_lexicon, load_rules
from gluelfg.structures import format_fstructure

fixtures = files("gluelfg") / "fixtures"
lexicon = load_lexicon(fixtures / "example.lex")
rules = load_rules(fixtures / "example.grammar")

# one parse, one f-structure
(it,) = analyze_sentence("Every candidate appointed a manager.", lexicon, rules)
print(it.tree.bracket())
print(format_fstructure(it.analysis.fstructure))

# one premise per word: the determiners are the higher-order ones
for p in it.premises:
    print(p)

# each reading carries one witnessing derivation
for r in it.readings:
    print()
    print(r.text)
    for line in r.derivation.trace()[:4]:
        print("   ", line)
    print("    ...")
