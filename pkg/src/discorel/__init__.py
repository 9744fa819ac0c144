"""
Relational compositional semantics for pregroup grammars.

Sentences are parsed into reduction diagrams, sent to relational wirings,
read as conjunctive queries and answered against databases compiled from
a corpus.

>>> from discorel import Grammar, Ty, parse
>>> g = Grammar.from_entries([("Alice", "n"), ("sleeps", "*n s")])
>>> parse(g, ["Alice", "sleeps"], Ty.parse("s")).matching
((0, 1),)
"""

from discorel.cq import canonical_structure, contains, entails, equivalent, evaluate, sentence_query
from discorel.errors import DiscorelError
from discorel.homomorphism import enumerate_homomorphisms, find_homomorphism, iter_homomorphisms
from discorel.lexicon import Lexicon, apply_L
from discorel.pregroup import (
    BasicTypePoset,
    Grammar,
    ParseDiagram,
    Ty,
    adjoint,
    enumerate_parses,
    expand_induced_steps,
    grammatical,
    parse,
    poset_closure,
)
from discorel.qa import (
    CompiledDatabase,
    Corpus,
    EntityLinking,
    answer,
    answer_query,
    compile_corpus,
    corpus_query,
    graph_to_corpus,
    pattern_query,
)
from discorel.query import Query, lambda_translate, parse_query, theta_translate
from discorel.structure import RelSignature, RelStructure
from discorel.wiring import Wiring, canonical_form, compose, direct_eval, is_isomorphic, tensor

__all__ = [
    "adjoint",
    "answer",
    "answer_query",
    "apply_L",
    "BasicTypePoset",
    "canonical_form",
    "canonical_structure",
    "compile_corpus",
    "CompiledDatabase",
    "compose",
    "contains",
    "Corpus",
    "corpus_query",
    "direct_eval",
    "DiscorelError",
    "entails",
    "EntityLinking",
    "enumerate_homomorphisms",
    "enumerate_parses",
    "equivalent",
    "evaluate",
    "expand_induced_steps",
    "find_homomorphism",
    "Grammar",
    "grammatical",
    "graph_to_corpus",
    "is_isomorphic",
    "iter_homomorphisms",
    "lambda_translate",
    "Lexicon",
    "parse",
    "parse_query",
    "ParseDiagram",
    "pattern_query",
    "poset_closure",
    "Query",
    "RelSignature",
    "RelStructure",
    "sentence_query",
    "tensor",
    "theta_translate",
    "Ty",
    "Wiring",
]

__version__ = "0.1.0"
