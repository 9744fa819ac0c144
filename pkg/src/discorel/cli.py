"""
Command-line interface.

Exit codes: 0 for success or a positive answer, 1 for a negative answer
(ungrammatical, not contained, no answers), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from discorel.cq import contains, entails, evaluate, sentence_query
from discorel.errors import DiscorelError
from discorel.lexicon import Lexicon
from discorel.pregroup import Grammar, Ty, enumerate_parses, grammatical, parse
from discorel.qa import (
    CompiledDatabase,
    Corpus,
    EntityLinking,
    compile_corpus,
    graph_grammar,
    graph_lexicon,
    graph_to_corpus,
    pattern_query,
    tokenize,
)
from discorel.query import parse_query
from discorel.structure import RelStructure


class InputError(DiscorelError):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    elif text:
        print(text)


def _read_query(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as f:
            text = f.read()
    return parse_query(text)


def _parse_or_fail(grammar, sentence, target):
    r = parse(grammar, tokenize(sentence), Ty.parse(target))
    if r is None:
        raise InputError(f"not grammatical at type {target!r}: {sentence!r}")
    return r


def _load_database(path) -> RelStructure:
    return CompiledDatabase.load(path).structure


def _answers_text(free, answers) -> list:
    return sorted(" ".join(f"{v}={e}" for v, e in zip(free, row)) for row in answers)


def cmd_parse(args) -> int:
    grammar = Grammar.load(args.grammar)
    words, target = tokenize(args.sentence), Ty.parse(args.target)
    if args.all:
        parses = enumerate_parses(grammar, words, target, args.limit)
        _emit(args, "\n\n".join(r.pretty() for r in parses), [r.to_json() for r in parses])
        found = bool(parses)
    else:
        r = parse(grammar, words, target)
        _emit(args, r.pretty() if r else "", r.to_json() if r else None)
        found = r is not None
    if not found and args.format == "text":
        print("no parse")
    return 0 if found else 1


def cmd_grammatical(args) -> int:
    grammar = Grammar.load(args.grammar)
    ok = grammatical(grammar, tokenize(args.sentence), Ty.parse(args.target))
    _emit(args, "yes" if ok else "no", {"grammatical": ok})
    return 0 if ok else 1


def cmd_translate(args) -> int:
    grammar, lexicon = Grammar.load(args.grammar), Lexicon.load(args.lexicon)
    r = parse(grammar, tokenize(args.sentence), Ty.parse(args.target))
    if r is None:
        _emit(args, "no parse", {"query": None})
        return 1
    q = sentence_query(r, lexicon)
    _emit(args, str(q), {"query": str(q), "free": list(q.free)})
    return 0


def cmd_eval(args) -> int:
    structure = _load_database(args.database)
    q = _read_query(args.query)
    answers = evaluate(q, structure)
    lines = _answers_text(q.free, answers)
    if not q.free and answers:
        lines = ["true"]
    _emit(args, "\n".join(lines), {"free": list(q.free), "answers": sorted(map(list, answers))})
    return 0


def cmd_contain(args) -> int:
    ok = contains(_read_query(args.query1), _read_query(args.query2))
    _emit(args, "yes" if ok else "no", {"contained": ok})
    return 0 if ok else 1


def cmd_entail(args) -> int:
    grammar, lexicon = Grammar.load(args.grammar), Lexicon.load(args.lexicon)
    r1 = _parse_or_fail(grammar, args.sentence1, args.target)
    r2 = _parse_or_fail(grammar, args.sentence2, args.target)
    ok = entails(r1, r2, lexicon)
    _emit(args, "yes" if ok else "no", {"entails": ok})
    return 0 if ok else 1


def cmd_build_db(args) -> int:
    grammar, lexicon = Grammar.load(args.grammar), Lexicon.load(args.lexicon)
    with open(args.corpus, encoding="utf-8") as f:
        corpus = Corpus.from_text(f.read().splitlines(), grammar, Ty.parse(args.target))
    linking = EntityLinking.load(args.linking) if args.linking else EntityLinking()
    db = compile_corpus(corpus, lexicon, linking)
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(db.to_json(), f, indent=2, ensure_ascii=False)
        f.write("\n")
    s = db.structure
    _emit(
        args,
        f"{len(corpus)} sentences, {len(s.universe)} entities, {s.size} rows -> {args.out}",
        {"sentences": len(corpus), "entities": len(s.universe), "rows": s.size, "out": args.out},
    )
    return 0


def cmd_ask(args) -> int:
    structure = _load_database(args.database)
    if args.query is not None:
        q = _read_query(args.query)
    else:
        if not (args.grammar and args.lexicon and args.question):
            raise InputError("ask needs --grammar, --lexicon and a question, or --query")
        grammar, lexicon = Grammar.load(args.grammar), Lexicon.load(args.lexicon)
        q = sentence_query(_parse_or_fail(grammar, args.question, args.target), lexicon)
    answers = sorted(evaluate(q, structure), key=lambda row: [str(e) for e in row])
    lines = [" ".join(str(e) for e in row) if row else "true" for row in answers]
    _emit(args, "\n".join(lines), {"free": list(q.free), "answers": [list(r) for r in answers]})
    if not answers and args.format == "text":
        print("no answers", file=sys.stderr)
    return 0 if answers else 1


def _read_graph(path) -> RelStructure:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if "edges" in data:
        edges = [tuple(e) for e in data["edges"]]
        nodes = data.get("nodes", [])
        return RelStructure({"edge": 2}, [*nodes, *(x for e in edges for x in e)], {"edge": edges})
    return RelStructure.from_json(data)


def cmd_encode_graph(args) -> int:
    graph = _read_graph(args.graph)
    corpus, linking, lines = graph_to_corpus(graph, symmetric=args.symmetric)
    os.makedirs(args.out_dir, exist_ok=True)
    paths = {name: os.path.join(args.out_dir, name) for name in
             ("grammar.json", "lexicon.json", "corpus.txt", "linking.json")}
    with open(paths["grammar.json"], "w", encoding="utf-8") as f:
        json.dump(graph_grammar(graph).to_json(), f, indent=2)
    with open(paths["lexicon.json"], "w", encoding="utf-8") as f:
        json.dump(graph_lexicon(graph).to_json(), f, indent=2)
    with open(paths["corpus.txt"], "w", encoding="utf-8") as f:
        f.write("".join(line + "\n" for line in lines))
    with open(paths["linking.json"], "w", encoding="utf-8") as f:
        json.dump(linking.to_json(), f, indent=2)
    if args.pattern:
        paths["pattern.query"] = os.path.join(args.out_dir, "pattern.query")
        with open(paths["pattern.query"], "w", encoding="utf-8") as f:
            f.write(str(pattern_query(_read_graph(args.pattern))) + "\n")
    _emit(args, "\n".join(paths.values()), paths)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized utilities")

    parser = argparse.ArgumentParser(prog="discorel", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized utilities")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    for name, func, help in [
        ("parse", cmd_parse, "parse a sentence into a reduction diagram"),
        ("grammatical", cmd_grammatical, "decide grammaticality"),
    ]:
        p = command(name, func, help)
        p.add_argument("-g", "--grammar", required=True)
        p.add_argument("sentence")
        p.add_argument("target", nargs="?", default="s")
        if name == "parse":
            p.add_argument("--all", action="store_true", help="list parses in canonical order")
            p.add_argument("--limit", type=int, default=10)

    p = command("translate", cmd_translate, "print the query of a sentence")
    p.add_argument("-g", "--grammar", required=True)
    p.add_argument("-l", "--lexicon", required=True)
    p.add_argument("sentence")
    p.add_argument("target", nargs="?", default="s")

    p = command("eval", cmd_eval, "evaluate a query on a database")
    p.add_argument("-d", "--database", required=True)
    p.add_argument("query", help="query text, or @file")

    p = command("contain", cmd_contain, "decide containment of the first query in the second")
    p.add_argument("query1")
    p.add_argument("query2")

    p = command("entail", cmd_entail, "decide entailment between two sentences")
    p.add_argument("-g", "--grammar", required=True)
    p.add_argument("-l", "--lexicon", required=True)
    p.add_argument("sentence1")
    p.add_argument("sentence2")
    p.add_argument("--target", default="s")

    p = command("build-db", cmd_build_db, "compile a corpus and a linking into a database")
    p.add_argument("-g", "--grammar", required=True)
    p.add_argument("-l", "--lexicon", required=True)
    p.add_argument("-c", "--corpus", required=True)
    p.add_argument("-e", "--linking")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--target", default="s")

    p = command("ask", cmd_ask, "answer a question against a compiled database")
    p.add_argument("-d", "--database", required=True)
    p.add_argument("-g", "--grammar")
    p.add_argument("-l", "--lexicon")
    p.add_argument("question", nargs="?")
    p.add_argument("--target", default="q")
    p.add_argument("--query", help="ask a query directly (text or @file)")

    p = command("encode-graph", cmd_encode_graph, "encode a graph as a corpus")
    p.add_argument("graph", help="JSON graph: {nodes, edges} or a database file")
    p.add_argument("-o", "--out-dir", required=True)
    p.add_argument("--symmetric", action="store_true", help="state every edge both ways")
    p.add_argument("--pattern", help="graph whose homomorphisms the pattern query asks for")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DiscorelError, OSError, ValueError, KeyError, TypeError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
