"""
A pronoun restricts scope
=========================

"Every candidate appointed an admirer of his" has one reading when "his"
is bound by "every candidate": the indefinite cannot scope over the
quantifier that binds its pronoun.  With "Mary" in place of the pronoun
both scopings come back.  The main prover and the exhaustive reference
prover agree on both.
"""

from importlib.resources import files

from gluelfg import load_lexicon
from gluelfg.interpret import prove_fstructure
from gluelfg.structures import parse_fstructure

fixtures = files("gluelfg") / "fixtures"
lexicon = load_lexicon(fixtures / "example.lex")

for name in ("admirer.fs", "admirer_mary.fs"):
    fs, links = parse_fstructure((fixtures / name).read_text())
    main = prove_fstructure(fs, links, lexicon)
    oracle = prove_fstructure(fs, links, lexicon, oracle=True)
    print(f"{name}: {len(main.readings)} reading(s), oracle agrees: "
          f"{[r.text for r in main.readings] == [r.text for r in oracle.readings]}")
    for r in main.readings:
        print("   ", r.text)
