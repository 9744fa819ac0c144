"""
Graphs as corpora
=================

Any directed graph can be written as a corpus: one sentence "a links b"
per edge.  Asking for all the ways a pattern graph sits in the corpus is
then graph homomorphism, which is why question answering is NP-hard.
"""

from discorel import RelStructure, answer_query, compile_corpus, find_homomorphism, graph_to_corpus, pattern_query
from discorel.qa import graph_lexicon


def graph(edges, nodes=()):
    return RelStructure({"edge": 2}, [*nodes, *(x for e in edges for x in e)], {"edge": edges})


triangle = graph([("a", "b"), ("b", "c"), ("c", "a")])
two_cycle = graph([("u", "v"), ("v", "u")])
loop = graph([("z", "z")])

corpus, linking, lines = graph_to_corpus(two_cycle)
print(lines)

db = compile_corpus(corpus, graph_lexicon(two_cycle), linking)
print(db.structure == two_cycle)

# an odd cycle cannot fold onto an even one
q = pattern_query(triangle)
print(q)
print(answer_query(db, q), find_homomorphism(triangle, two_cycle))

# but it collapses onto a loop
corpus, linking, _ = graph_to_corpus(loop)
print(answer_query(compile_corpus(corpus, graph_lexicon(loop), linking), q))

# read symmetrically, each edge is stated both ways
print(graph_to_corpus(triangle, symmetric=True)[2])
