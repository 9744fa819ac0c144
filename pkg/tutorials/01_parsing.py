"""
Parsing with a pregroup grammar
===============================

Words get pregroup types; a sentence is grammatical when the concatenated
types contract down to the sentence type.  The parse is the pattern of
cups doing the contracting.
"""

import os

from discorel import Grammar, Ty, enumerate_parses, expand_induced_steps, grammatical, parse

DEMO = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "demo")

# a toy grammar: nouns n, a transitive verb expects a noun on each side
g = Grammar.from_entries([("Alice", "n"), ("Bob", "n"), ("loves", "*n s n*")])
s = Ty.parse("s")
print(grammatical(g, ["Alice", "loves", "Bob"], s))
print(grammatical(g, ["loves", "Alice", "Bob"], s))

r = parse(g, ["Alice", "loves", "Bob"], s)
print(r.pretty())

# adjoints: *t is the left adjoint, t* the right one
t = Ty.parse("*i s o*")
print(t.l, "|", t.r)

# the question from the demo grammar, typed q for questions
demo = Grammar.load(os.path.join(DEMO, "grammar.json"))
question = "Who influenced the philosopher who discovered calculus".split()
r = parse(demo, question, Ty.parse("q"))
print(r.pretty())

# "influenced" wants an object of type o, "philosopher" is a noun n.
# The order n <= o lets the cup close anyway.  Removing the order by
# expanding the dictionary gives the same cups, reached four ways.
expanded = expand_induced_steps(demo)
print(len(demo.dictionary), "entries ->", len(expanded.dictionary))
for p in enumerate_parses(expanded, question, Ty.parse("q")):
    print(p.choices, p.matching == r.matching)

# lexical ambiguity gives several parses, listed in a fixed order
g = Grammar.from_entries(
    [("men", "n"), ("women", "n"), ("and", "*n n n*"), ("who", "*n n s* n"), ("read", "*n s")]
)
for p in enumerate_parses(g, "men and women who read".split(), Ty.parse("n")):
    print(p.matching, "output", p.output)
