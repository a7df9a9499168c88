"""
Every premise exactly once
==========================

Glue premises are resources.  Dropping a word or using one twice leaves
nothing to derive, and the search reports which kind of failure it saw.
"""

import dataclasses
from importlib.resources import files

from gluelfg import analyze_sentence, load_lexicon, load_rules
from gluelfg.prover import SearchStats, enumerate_readings, replay

fixtures = files("gluelfg") / "fixtures"
lexicon = load_lexicon(fixtures / "example.lex")
rules = load_rules(fixtures / "example.grammar")

(it,) = analyze_sentence("Bill convinced every voter.", lexicon, rules)
premises, goal = it.premises, it.goal
print("readings:", [r.text for r in it.readings])


def reindex(ps):
    return [dataclasses.replace(p, index=i) for i, p in enumerate(ps)]


# drop each premise in turn
for i, p in enumerate(premises):
    stats = SearchStats()
    found = enumerate_readings(reindex(premises[:i] + premises[i + 1 :]), goal, stats=stats)
    print(f"without {p.origin:16} -> {len(found)} readings ({stats.diagnosis})")

# use one premise twice
stats = SearchStats()
found = enumerate_readings(reindex(premises + [premises[0]]), goal, stats=stats)
print(f"with {premises[0].origin} twice -> {len(found)} readings ({stats.diagnosis})")

# derivations can be re-checked independently of the search
d = it.readings[0].derivation
print("replay:", replay(d, premises, goal))
print("replay without the verb:", replay(d, [p for p in premises if "convinced" not in p.origin], goal))
