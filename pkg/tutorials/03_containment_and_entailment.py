"""
Containment and entailment
==========================

One query is contained in another when every answer to the first answers
the second, in every database.  That reduces to finding a homomorphism
between the canonical structures of the two queries.  Sentence entailment
is containment of their queries.
"""

import os

from discorel import Grammar, Lexicon, Ty, contains, entails, equivalent, parse, parse_query
from discorel import canonical_structure, enumerate_homomorphisms

DEMO = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "demo")

strong = parse_query("exists y . R(x,y) & S(y)")
weak = parse_query("exists y . R(x,y)")
print(contains(strong, weak), contains(weak, strong))

# the witness runs from the weaker query's structure into the stronger one's
print(enumerate_homomorphisms(canonical_structure(weak), canonical_structure(strong), {"x": "x"}))

# redundant atoms fold away
print(equivalent(parse_query("exists y z . R(x,y) & R(x,z)"), weak))

grammar = Grammar.load(os.path.join(DEMO, "grammar.json"))
lexicon = Lexicon.load(os.path.join(DEMO, "lexicon.json"))
s = Ty.parse("s")


def sentence(text):
    return parse(grammar, text.split(), s)


long = sentence("Spinoza influenced the philosopher Leibniz")
short = sentence("Spinoza influenced Leibniz")
print(entails(long, short, lexicon), entails(short, long, lexicon))
print(entails(short, sentence("Leibniz discovered calculus"), lexicon))
