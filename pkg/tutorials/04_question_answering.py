"""
Answering questions from a corpus
=================================

Each corpus sentence becomes a closed query.  An entity linking says which
variables name the same thing; substituting the entities and taking the
canonical structure of the whole corpus gives a database.  A question is
answered by evaluating its own query on that database.
"""

import os

from discorel import CompiledDatabase, Corpus, EntityLinking, Grammar, Lexicon, Ty
from discorel import answer, compile_corpus, corpus_query, parse
from discorel.qa import tokenize

DEMO = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "demo")

grammar = Grammar.load(os.path.join(DEMO, "grammar.json"))
lexicon = Lexicon.load(os.path.join(DEMO, "lexicon.json"))

with open(os.path.join(DEMO, "corpus.txt"), encoding="utf-8") as f:
    lines = f.read().splitlines()
print(lines)

corpus = Corpus.from_text(lines, grammar)
print(corpus_query(corpus, lexicon))

# the linking ties both mentions of Leibniz to one entity
linking = EntityLinking.load(os.path.join(DEMO, "linking.json"))
db = compile_corpus(corpus, lexicon, linking)
print(db.structure)
print(db.provenance[("leib", ("Leibniz",))])

question = parse(grammar, tokenize("Who influenced the philosopher who discovered calculus?"), Ty.parse("q"))
print(answer(db, question, lexicon))

# without it, the two Leibnizes stay apart and nothing answers
unlinked = compile_corpus(corpus, lexicon, EntityLinking())
print(unlinked.structure.universe)
print(answer(unlinked, question, lexicon))

# databases serialize to JSON with their provenance
print(CompiledDatabase.from_json(db.to_json()) == db)
