"""
From parses to conjunctive queries
==================================

A lexicon sends each dictionary entry to a small wiring: boxes for the
content words, bare shared wires for the functional ones.  Gluing the
wirings along the cups of a parse gives the meaning of the sentence, which
reads off directly as a conjunctive query.
"""

import os

from discorel import Grammar, Lexicon, Ty, apply_L, direct_eval, evaluate, lambda_translate, parse, parse_query
from discorel import RelStructure, theta_translate
from discorel.wiring import cap, compose, cup, identity, is_isomorphic, tensor

DEMO = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "demo")

# wirings compose by gluing wires; the snake straightens to a plain wire
snake = compose(tensor(identity(1), cap()), tensor(cup(), identity(1)))
print(snake, is_isomorphic(snake, identity(1)))

grammar = Grammar.load(os.path.join(DEMO, "grammar.json"))
lexicon = Lexicon.load(os.path.join(DEMO, "lexicon.json"))

# "who" is all wires: it copies the noun it follows
print(lexicon.template("who", Ty.parse("*n n s* i")))

r = parse(grammar, "Who influenced the philosopher who discovered calculus".split(), Ty.parse("q"))
d = apply_L(lexicon, r)
print(d)

q = lambda_translate(d)
print(q)

# going back and forth only renames wires
print(is_isomorphic(theta_translate(q), d))

# evaluating the wiring directly agrees with evaluating its query
k = RelStructure(
    lexicon.signature,
    ["Spinoza", "Leibniz", "Newton", "calculus", "optics"],
    {
        "infl": [("Spinoza", "Leibniz"), ("Leibniz", "Newton")],
        "phil": [("Leibniz",), ("Spinoza",)],
        "disc": [("Leibniz", "calculus"), ("Newton", "calculus"), ("Newton", "optics")],
        "calc": [("calculus",)],
    },
)
print(direct_eval(d, k), evaluate(q, k))

# queries can also be written by hand; equalities merge variables
print(parse_query("exists y z . infl(x,y) & disc(z,w) & y = z"))
