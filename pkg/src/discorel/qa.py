"""
Question answering over a parsed corpus.

Each corpus sentence is translated to a closed query; an entity linking
substitutes entities for their variables, and the canonical structure of
the resulting conjunction is the database questions are evaluated on.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from discorel.cq import evaluate, sentence_query
from discorel.errors import LinkingError, NonClosedSentenceError, UnknownEntityError
from discorel.lexicon import Lexicon
from discorel.pregroup import Grammar, ParseDiagram, Ty, parse
from discorel.query import Query, conjunction
from discorel.structure import RelSignature, RelStructure
from discorel.wiring import Wiring, box

_PUNCTUATION = "?.!,;:"


def tokenize(sentence: str) -> list:
    """Whitespace tokens with surrounding punctuation stripped."""
    words = (w.strip(_PUNCTUATION) for w in sentence.split())
    return [w for w in words if w]


@dataclass(frozen=True)
class Corpus:
    sentences: tuple = ()  # (ParseDiagram, ...), all targeting the sentence type

    def __len__(self):
        return len(self.sentences)

    @classmethod
    def from_text(cls, lines: Sequence[str], grammar: Grammar, target: Ty = Ty.basic("s")) -> Corpus:
        """Parse one sentence per non-blank line; ungrammatical lines are an error."""
        parses = []
        for number, line in enumerate(lines, 1):
            words = tokenize(line)
            if not words:
                continue
            r = parse(grammar, words, target)
            if r is None:
                raise ValueError(f"line {number} is not a grammatical sentence: {line.strip()!r}")
            parses.append(r)
        return cls(tuple(parses))


@dataclass(frozen=True)
class EntityLinking:
    """Per-sentence links ``(sentence index, variable) -> entity``."""

    entities: frozenset = frozenset()
    links: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entities", frozenset(self.entities))
        object.__setattr__(self, "links", MappingProxyType(dict(self.links)))

    @classmethod
    def from_json(cls, data) -> EntityLinking:
        if isinstance(data, str):
            data = json.loads(data)
        links = {(int(l["sentence"]), l["variable"]): l["entity"] for l in data.get("links", [])}
        return cls(frozenset(data.get("entities", [])), links)

    @classmethod
    def load(cls, path) -> EntityLinking:
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))

    def to_json(self) -> dict:
        return {
            "entities": sorted(self.entities),
            "links": [
                {"sentence": i, "variable": v, "entity": e}
                for (i, v), e in sorted(self.links.items(), key=lambda kv: (kv[0][0], _var_key(kv[0][1])))
            ],
        }


def _var_key(name):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


@dataclass(frozen=True)
class CompiledDatabase:
    structure: RelStructure
    provenance: Mapping  # (symbol, row) -> (sentence index, ...)

    def to_json(self) -> dict:
        data = self.structure.to_json()
        index = {e: k for k, e in enumerate(self.structure.universe)}
        data["provenance"] = [
            {"symbol": s, "row": list(row), "sentences": list(sentences)}
            for (s, row), sentences in sorted(
                self.provenance.items(), key=lambda kv: (kv[0][0], [index[e] for e in kv[0][1]])
            )
        ]
        return data

    @classmethod
    def from_json(cls, data) -> CompiledDatabase:
        if isinstance(data, str):
            data = json.loads(data)
        provenance = {
            (p["symbol"], tuple(p["row"])): tuple(p["sentences"]) for p in data.get("provenance", [])
        }
        return cls(RelStructure.from_json(data), provenance)

    @classmethod
    def load(cls, path) -> CompiledDatabase:
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))


def _closed_sentence_queries(corpus: Corpus, lexicon: Lexicon) -> list:
    queries = []
    for i, r in enumerate(corpus.sentences):
        q = sentence_query(r, lexicon)
        if q.free:
            raise NonClosedSentenceError(
                f"sentence {i} ({' '.join(r.words)}) has free variables {list(q.free)}"
            )
        queries.append(q)
    return queries


def corpus_query(corpus: Corpus, lexicon: Lexicon) -> Query:
    """
    Conjunction of the sentence queries, variables renamed apart.

    Sentence ``i`` keeps its variable order; names continue ``x0, x1, ...``
    across sentences.
    """
    renamed, counter = [], 0
    for q in _closed_sentence_queries(corpus, lexicon):
        mapping = {v: f"x{counter + k}" for k, v in enumerate(q.variables)}
        counter += len(q.variables)
        renamed.append(q.rename(mapping))
    return conjunction(renamed)


def compile_corpus(corpus: Corpus, lexicon: Lexicon, linking: EntityLinking) -> CompiledDatabase:
    """
    Substitute linked entities into the corpus query and build its canonical structure.

    Variables without a link become blank entities ``_:<sentence>:<variable>``.
    """
    queries = _closed_sentence_queries(corpus, lexicon)
    for (i, v), entity in linking.links.items():
        if not 0 <= i < len(queries) or v not in queries[i].variables:
            raise LinkingError(f"link for sentence {i}, variable {v!r} matches nothing")
        if entity not in linking.entities:
            raise UnknownEntityError(f"entity {entity!r} is not declared")
    universe, tables, provenance = [], {}, {}
    signature = RelSignature()
    for i, q in enumerate(queries):
        mu = {v: linking.links.get((i, v), f"_:{i}:{v}") for v in q.variables}
        universe.extend(mu[v] for v in q.variables)
        signature = signature.merge(q.signature)
        for symbol, args in q.atoms:
            row = tuple(mu[v] for v in args)
            tables.setdefault(symbol, set()).add(row)
            sources = provenance.setdefault((symbol, row), [])
            if i not in sources:
                sources.append(i)
    structure = RelStructure(signature, universe, tables)
    return CompiledDatabase(structure, MappingProxyType({k: tuple(v) for k, v in provenance.items()}))


def answer_query(db: CompiledDatabase, q: Query) -> set:
    return evaluate(q, db.structure)


def answer(db: CompiledDatabase, question: ParseDiagram, lexicon: Lexicon) -> set:
    """Entity tuples answering a parsed question, aligned with its free variables."""
    return answer_query(db, sentence_query(question, lexicon))


VERB, EXISTS = "links", "exists"


def _graph_parts(graph: RelStructure):
    binary = [s for s in graph.signature if graph.signature[s] == 2]
    if len(graph.signature) != 1 or len(binary) != 1:
        raise ValueError("a graph is a structure over a single binary symbol")
    symbol = binary[0]
    words = {x: str(x) for x in graph.universe}
    if len(set(words.values())) != len(words) or {VERB, EXISTS} & set(words.values()):
        raise ValueError("node names must be distinct and differ from the grammar's verbs")
    return symbol, words


def graph_grammar(graph: RelStructure) -> Grammar:
    """Nouns for the nodes, a transitive verb and an intransitive one."""
    _, words = _graph_parts(graph)
    entries = [(w, Ty.parse("n")) for w in words.values()]
    entries += [(VERB, Ty.parse("*n s n*")), (EXISTS, Ty.parse("*n s"))]
    return Grammar.from_entries(entries, basics={"n", "s"})


def graph_lexicon(graph: RelStructure) -> Lexicon:
    """Nouns are bare wires, the transitive verb is the edge relation."""
    symbol, words = _graph_parts(graph)
    noun = Wiring(1, (), (), (0,))
    entries = {(w, Ty.parse("n")): noun for w in words.values()}
    entries[VERB, Ty.parse("*n s n*")] = box(symbol, 2)
    entries[EXISTS, Ty.parse("*n s")] = Wiring(1, (), (), (0,))
    return Lexicon({"s": 0, "n": 1}, entries)


def graph_to_corpus(graph: RelStructure, symmetric: bool = False):
    """
    One subject-verb-object sentence per edge, and an ``exists`` sentence
    for each node without edges; linking sends each noun to its node.

    With ``symmetric`` every edge is also stated in the reverse direction.
    Returns ``(corpus, linking, lines)`` where ``lines`` is the corpus text.
    """
    symbol, words = _graph_parts(graph)
    grammar = graph_grammar(graph)
    index = {x: k for k, x in enumerate(graph.universe)}
    edges = set(graph[symbol])
    if symmetric:
        edges |= {(b, a) for a, b in edges}
    edges = sorted(edges, key=lambda e: (index[e[0]], index[e[1]]))
    lines, links = [], {}
    for a, b in edges:
        links[len(lines), "x0"] = words[a]
        links[len(lines), "x1"] = words[b]
        lines.append(f"{words[a]} {VERB} {words[b]}")
    touched = {x for e in edges for x in e}
    for x in graph.universe:
        if x not in touched:
            links[len(lines), "x0"] = words[x]
            lines.append(f"{words[x]} {EXISTS}")
    corpus = Corpus.from_text(lines, grammar)
    return corpus, EntityLinking(frozenset(words.values()), links), lines


def pattern_query(pattern: RelStructure) -> Query:
    """Query whose answers are the homomorphisms out of ``pattern``: one free variable per node."""
    names = {x: f"x{k}" for k, x in enumerate(pattern.universe)}
    atoms = [(s, tuple(names[x] for x in row)) for s, rows in pattern.sorted_tables().items() for row in rows]
    return Query(tuple(names.values()), tuple(names.values()), tuple(atoms), pattern.signature)
