"""
Pregroup grammars: types, dictionaries, grammaticality and parsing.

Types are sequences of basic types carrying an integer adjoint exponent.
``*i`` has exponent -1, ``i*`` has exponent +1, and a contraction cancels
two neighbouring tokens ``(a, z) (b, z - 1)``, which covers both
``t *t <= e`` and ``t* t <= e``.

>>> g = Grammar.from_entries(
...     [("Alice", "n"), ("loves", "*n s n*"), ("Bob", "n")])
>>> r = parse(g, ["Alice", "loves", "Bob"], Ty.parse("s"))
>>> r.matching
((0, 1), (3, 4))
>>> r.output
(2,)
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from discorel.errors import CycleError, ScaleError, TypeSyntaxError, UnknownWordError

Token = tuple  # (basic: str, z: int)

_TOKEN_RE = re.compile(r"^(\**)([A-Za-z0-9_]+)(\*\**)?$")


@dataclass(frozen=True)
class BasicTypePoset:
    """
    Finite poset of basic types, stored as its reflexive-transitive closure.

    Build one with :func:`poset_closure` rather than directly.
    """

    names: frozenset
    order: frozenset

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    @property
    def is_discrete(self) -> bool:
        return all(a == b for a, b in self.order)

    def upper(self, a: str) -> list:
        """Every ``b`` with ``a <= b``, sorted."""
        return sorted(b for x, b in self.order if x == a)

    def lower(self, a: str) -> list:
        return sorted(x for x, b in self.order if b == a)

    @classmethod
    def discrete(cls, names: Iterable[str]) -> BasicTypePoset:
        return poset_closure(set(), set(names))


def poset_closure(pairs, names) -> BasicTypePoset:
    """
    Reflexive-transitive closure of ``pairs`` over ``names``.

    >>> p = poset_closure({("n", "i"), ("n", "o")}, {"s", "n", "i", "o"})
    >>> p.leq("n", "i"), p.leq("i", "n"), p.leq("s", "s")
    (True, False, True)
    """
    names = frozenset(names)
    pairs = {tuple(p) for p in pairs}
    for a, b in pairs:
        if a not in names or b not in names:
            raise ValueError(f"order pair ({a}, {b}) mentions an unknown basic type")
    order = {(a, a) for a in names} | pairs
    changed = True
    while changed:
        changed = False
        for a, b in list(order):
            for c, d in list(order):
                if b == c and (a, d) not in order:
                    order.add((a, d))
                    changed = True
    for a, b in order:
        if a != b and (b, a) in order:
            raise CycleError(f"{a} <= {b} and {b} <= {a} for distinct basic types")
    return BasicTypePoset(names, frozenset(order))


def _format_token(token) -> str:
    basic, z = token
    return "*" * -z + basic if z < 0 else basic + "*" * z


@dataclass(frozen=True)
class Ty:
    """
    A pregroup type: an immutable sequence of ``(basic, z)`` tokens.

    >>> t = Ty.parse("*i s o*")
    >>> t.tokens
    (('i', -1), ('s', 0), ('o', 1))
    >>> print(t.r)
    o** s* i
    >>> t.l.r == t == t.r.l
    True
    """

    tokens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple((str(b), int(z)) for b, z in self.tokens))

    @classmethod
    def parse(cls, text: str) -> Ty:
        tokens = []
        for word in text.split():
            match = _TOKEN_RE.match(word)
            if match is None or (match.group(1) and match.group(3)):
                raise TypeSyntaxError(f"malformed type token {word!r}")
            left, basic, right = match.group(1), match.group(2), match.group(3) or ""
            tokens.append((basic, len(right) - len(left)))
        return cls(tuple(tokens))

    @classmethod
    def basic(cls, name: str) -> Ty:
        return cls(((name, 0),))

    def __str__(self):
        return " ".join(_format_token(t) for t in self.tokens)

    def __repr__(self):
        return f"Ty.parse({str(self)!r})"

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Ty(self.tokens[key])
        return self.tokens[key]

    def __add__(self, other: Ty) -> Ty:
        return Ty(self.tokens + other.tokens)

    @property
    def l(self) -> Ty:  # noqa: E743
        return adjoint(self, "left")

    @property
    def r(self) -> Ty:
        return adjoint(self, "right")

    @property
    def basics(self) -> set:
        return {b for b, _ in self.tokens}


def adjoint(t: Ty, side: str) -> Ty:
    """Left (``side="left"``) or right adjoint: reverse and shift every exponent."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    shift = -1 if side == "left" else 1
    return Ty(tuple((b, z + shift) for b, z in reversed(t.tokens)))


def token_leq(x, y, poset: BasicTypePoset) -> bool:
    """Induced step ``x <= y`` between single tokens: monotone for even exponents."""
    (a, z), (b, w) = x, y
    if z != w:
        return False
    return poset.leq(a, b) if z % 2 == 0 else poset.leq(b, a)


def cancels(left, right, poset: BasicTypePoset) -> bool:
    """Whether ``left right <= e`` by one contraction, allowing an induced step."""
    (a, z), (b, w) = left, right
    if w != z - 1:
        return False
    return poset.leq(a, b) if z % 2 == 0 else poset.leq(b, a)


@dataclass(frozen=True)
class Grammar:
    """A pregroup grammar: vocabulary, basic-type poset and ordered dictionary."""

    vocabulary: frozenset
    basics: BasicTypePoset
    dictionary: tuple  # ((word, Ty), ...) in declaration order, duplicate-free

    def __post_init__(self):
        seen, entries = set(), []
        for word, t in self.dictionary:
            t = t if isinstance(t, Ty) else Ty.parse(t)
            if word not in self.vocabulary:
                raise ValueError(f"dictionary word {word!r} is not in the vocabulary")
            unknown = t.basics - self.basics.names
            if unknown:
                raise ValueError(f"entry ({word}, {t}) uses unknown basic types {sorted(unknown)}")
            if (word, t) not in seen:
                seen.add((word, t))
                entries.append((word, t))
        object.__setattr__(self, "dictionary", tuple(entries))

    @classmethod
    def from_entries(cls, entries, order=(), basics=None) -> Grammar:
        """Convenience constructor; vocabulary and basics default to what the entries use."""
        entries = [(w, t if isinstance(t, Ty) else Ty.parse(t)) for w, t in entries]
        names = set(basics or ())
        for _, t in entries:
            names |= t.basics
        for a, b in order:
            names |= {a, b}
        return cls(frozenset(w for w, _ in entries), poset_closure(order, names), tuple(entries))

    @cached_property
    def _by_word(self) -> dict:
        table = {}
        for word, t in self.dictionary:
            table.setdefault(word, []).append(t)
        return table

    def entries(self, word: str) -> list:
        """Types of ``word`` in dictionary order."""
        if word not in self.vocabulary:
            raise UnknownWordError(f"unknown word {word!r}")
        return list(self._by_word.get(word, []))

    @classmethod
    def from_json(cls, data) -> Grammar:
        if isinstance(data, str):
            data = json.loads(data)
        entries = [(e["word"], Ty.parse(e["type"])) for e in data["dictionary"]]
        vocabulary = set(data.get("vocabulary", [])) | {w for w, _ in entries}
        poset = poset_closure({tuple(p) for p in data.get("order", [])}, data["basics"])
        return cls(frozenset(vocabulary), poset, tuple(entries))

    @classmethod
    def load(cls, path) -> Grammar:
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))

    def to_json(self) -> dict:
        strict = sorted((a, b) for a, b in self.basics.order if a != b)
        data = {
            "basics": sorted(self.basics.names),
            "order": [list(p) for p in strict],
            "dictionary": [{"word": w, "type": str(t)} for w, t in self.dictionary],
        }
        extra = self.vocabulary - {w for w, _ in self.dictionary}
        if extra:
            data["vocabulary"] = sorted(self.vocabulary)
        return data


@dataclass(frozen=True)
class ParseDiagram:
    """
    A reduction diagram for an utterance.

    ``choices[k]`` indexes the entry picked for word ``k`` among
    ``grammar.entries(words[k])``; ``matching`` holds the cups over the
    concatenated token positions, sorted by left endpoint.
    """

    words: tuple
    assignment: tuple  # (Ty, ...) one per word
    choices: tuple
    matching: tuple
    output: tuple
    target: Ty = field(default_factory=Ty)

    @cached_property
    def tokens(self) -> tuple:
        return tuple(tok for t in self.assignment for tok in t)

    @cached_property
    def word_of_position(self) -> tuple:
        return tuple(k for k, t in enumerate(self.assignment) for _ in t)

    def to_json(self) -> dict:
        return {
            "words": list(self.words),
            "assignment": [
                {"word": w, "type": str(t), "index": i}
                for w, t, i in zip(self.words, self.assignment, self.choices)
            ],
            "matching": [list(p) for p in self.matching],
            "output": list(self.output),
            "target": str(self.target),
        }

    @classmethod
    def from_json(cls, data) -> ParseDiagram:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            words=tuple(data["words"]),
            assignment=tuple(Ty.parse(a["type"]) for a in data["assignment"]),
            choices=tuple(a["index"] for a in data["assignment"]),
            matching=tuple(tuple(p) for p in data["matching"]),
            output=tuple(data["output"]),
            target=Ty.parse(data["target"]),
        )

    def pretty(self) -> str:
        """Stable text rendering: one line per word, then cups and outputs."""
        lines, pos = [], 0
        for word, t in zip(self.words, self.assignment):
            cells = [f"{pos + k}:{_format_token(tok)}" for k, tok in enumerate(t)]
            lines.append(f"{word}\t{' '.join(cells)}")
            pos += len(t)
        lines.append("cups\t" + " ".join(f"{i}-{j}" for i, j in self.matching))
        lines.append("output\t" + " ".join(str(p) for p in self.output) + f"\t-> {self.target}")
        return "\n".join(lines)


def parse_violations(grammar: Grammar, r: ParseDiagram) -> list:
    """Every way in which ``r`` fails to be a valid parse; empty when valid."""
    problems = []
    if len(r.assignment) != len(r.words) or len(r.choices) != len(r.words):
        return ["assignment length differs from utterance length"]
    for word, t, i in zip(r.words, r.assignment, r.choices):
        try:
            entries = grammar.entries(word)
        except UnknownWordError:
            problems.append(f"unknown word {word!r}")
            continue
        if not 0 <= i < len(entries) or entries[i] != t:
            problems.append(f"({word}, {t}) is not dictionary entry {i} of {word!r}")
    tokens, poset = r.tokens, grammar.basics
    n = len(tokens)
    seen = {}
    for i, j in r.matching:
        if not 0 <= i < j < n:
            problems.append(f"cup ({i}, {j}) out of range")
            continue
        for p in (i, j):
            seen[p] = seen.get(p, 0) + 1
        if not cancels(tokens[i], tokens[j], poset):
            problems.append(f"cup ({i}, {j}) joins non-cancelling tokens")
    for (i, j), (k, l) in itertools.combinations(r.matching, 2):
        if i < k < j < l or k < i < l < j:
            problems.append(f"cups ({i}, {j}) and ({k}, {l}) cross")
    for p in r.output:
        seen[p] = seen.get(p, 0) + 1
    if any(count != 1 for count in seen.values()) or set(seen) != set(range(n)):
        problems.append("positions are not partitioned by cups and outputs")
    for i, j in r.matching:
        if any(i < p < j for p in r.output):
            problems.append(f"an output wire passes under cup ({i}, {j})")
    if list(r.output) != sorted(r.output):
        problems.append("output positions are not in order")
    out = [tokens[p] for p in r.output if 0 <= p < n]
    if len(out) != len(r.target) or not all(
        token_leq(x, y, poset) for x, y in zip(out, r.target)
    ):
        problems.append("output does not reduce to the target by induced steps")
    return problems


class _Chart:
    """Span tables for one concatenated token sequence."""

    def __init__(self, tokens: Sequence, target: Ty, poset: BasicTypePoset):
        self.tokens, self.target, self.poset = tuple(tokens), tuple(target), poset
        n, m = len(self.tokens), len(self.target)
        self.cancel = [
            [j > i and cancels(self.tokens[i], self.tokens[j], poset) for j in range(n)]
            for i in range(n)
        ]
        # red[i][j]: tokens[i:j] contracts to the unit
        red = [[False] * (n + 1) for _ in range(n + 1)]
        for i in range(n + 1):
            red[i][i] = True
        for length in range(2, n + 1, 2):
            for i in range(n - length + 1):
                j = i + length
                red[i][j] = any(
                    self.cancel[i][k] and red[i + 1][k] and red[k + 1][j]
                    for k in range(i + 1, j, 2)
                )
        self.red = red
        # top[p][q]: tokens[p:] reduces to target[q:]
        top = [[False] * (m + 1) for _ in range(n + 1)]
        top[n][m] = True
        for p in range(n - 1, -1, -1):
            for q in range(m + 1):
                if q < m and top[p + 1][q + 1] and token_leq(self.tokens[p], self.target[q], poset):
                    top[p][q] = True
                    continue
                top[p][q] = any(
                    self.cancel[p][k] and red[p + 1][k] and top[k + 1][q]
                    for k in range(p + 1, n, 2)
                )
        self.top = top

    @property
    def ok(self) -> bool:
        return self.top[0][0]

    def _reduce(self, i: int, j: int) -> Iterator[tuple]:
        if i == j:
            yield ()
            return
        for k in range(i + 1, j, 2):
            if self.cancel[i][k] and self.red[i + 1][k] and self.red[k + 1][j]:
                for inner in self._reduce(i + 1, k):
                    for rest in self._reduce(k + 1, j):
                        yield ((i, k),) + inner + rest

    def _match(self, p: int, q: int) -> Iterator[tuple]:
        n, m = len(self.tokens), len(self.target)
        if p == n:
            if q == m:
                yield ()
            return
        # opening a cup at p sorts before leaving p as an output
        for k in range(p + 1, n, 2):
            if self.cancel[p][k] and self.red[p + 1][k] and self.top[k + 1][q]:
                for inner in self._reduce(p + 1, k):
                    for rest in self._match(k + 1, q):
                        yield ((p, k),) + inner + rest
        if q < m and self.top[p + 1][q + 1] and token_leq(self.tokens[p], self.target[q], self.poset):
            yield from self._match(p + 1, q + 1)

    def matchings(self) -> Iterator[tuple]:
        """All cup matchings, in lexicographic order of the sorted pair list."""
        if self.ok:
            yield from self._match(0, 0)


class _Lattice:
    """
    Span tables over every choice of dictionary entries at once.

    A position is a token of one entry of one word; spans between two
    positions pick entries for the words strictly inside them freely, so
    choices never multiply.
    """

    def __init__(self, options: Sequence[Sequence[Ty]], target: Ty, poset: BasicTypePoset):
        self.target, self.poset = tuple(target), poset
        self.where, self.token, starts = [], [], []
        for w, entries in enumerate(options):
            heads, skippable = [], False
            for e, t in enumerate(entries):
                if not len(t):
                    skippable = True
                    continue
                heads.append(len(self.where))
                for k, tok in enumerate(t):
                    self.where.append((w, e, k, len(t)))
                    self.token.append(tok)
            starts.append((heads, skippable))
        self.end = len(self.where)
        self.where.append((len(options), 0, 0, 1))
        # entry[w]: positions at which reading may resume before word w
        entry = [[self.end]]
        for heads, skippable in reversed(starts):
            entry.append(heads + (entry[-1] if skippable else []))
        entry.reverse()
        self.start = entry[0]
        self.succ = []
        for x, (w, e, k, size) in enumerate(self.where[:-1]):
            self.succ.append([x + 1] if k + 1 < size else entry[w + 1])
        self._red, self._top = {}, {}

    def before(self, x: int, y: int) -> bool:
        (wx, ex, kx, _), (wy, ey, ky, _) = self.where[x], self.where[y]
        return wx < wy or (wx == wy and ex == ey and kx < ky)

    def _reach(self, x: int, y: int) -> bool:
        return x == y or self.before(x, y)

    def red(self, x: int, y: int) -> bool:
        """Tokens from ``x`` up to, not including, ``y`` contract to the unit."""
        if x == y:
            return True
        key = (x, y)
        if key not in self._red:
            self._red[key] = self.before(x, y) and any(
                cancels(self.token[x], self.token[z], self.poset)
                and any(self._reach(u, z) and self.red(u, z) for u in self.succ[x])
                and any(self._reach(v, y) and self.red(v, y) for v in self.succ[z])
                for z in range(self.end)
                if self.before(x, z) and self.before(z, y)
            )
        return self._red[key]

    def top(self, x: int, q: int) -> bool:
        """Tokens from ``x`` to the end reduce to ``target[q:]``."""
        if x == self.end:
            return q == len(self.target)
        key = (x, q)
        if key not in self._top:
            out = q < len(self.target) and token_leq(self.token[x], self.target[q], self.poset) and any(
                self.top(u, q + 1) for u in self.succ[x]
            )
            self._top[key] = out or any(
                cancels(self.token[x], self.token[z], self.poset)
                and any(self._reach(u, z) and self.red(u, z) for u in self.succ[x])
                and any(self.top(v, q) for v in self.succ[z])
                for z in range(self.end)
                if self.before(x, z)
            )
        return self._top[key]

    @property
    def ok(self) -> bool:
        return any(self.top(x, 0) for x in self.start)


def _choices(grammar: Grammar, words: Sequence[str], target: Ty) -> Iterator[tuple]:
    """Entry choices admitting a reduction, in lexicographic order."""
    options = [grammar.entries(w) for w in words]

    def extend(prefix):
        if len(prefix) == len(options):
            yield prefix
            return
        w = len(prefix)
        for e in range(len(options[w])):
            pinned = [[options[v][c]] for v, c in enumerate(prefix + (e,))] + options[w + 1 :]
            if _Lattice(pinned, target, grammar.basics).ok:
                yield from extend(prefix + (e,))

    if _Lattice(options, target, grammar.basics).ok:
        yield from extend(())


def _diagrams(grammar: Grammar, words: Sequence[str], target: Ty) -> Iterator[ParseDiagram]:
    words = tuple(words)
    for choices in _choices(grammar, words, target):
        assignment = tuple(grammar.entries(w)[c] for w, c in zip(words, choices))
        tokens = [tok for t in assignment for tok in t]
        chart = _Chart(tokens, target, grammar.basics)
        for matching in chart.matchings():
            matched = {p for pair in matching for p in pair}
            output = tuple(p for p in range(len(tokens)) if p not in matched)
            yield ParseDiagram(words, assignment, choices, matching, output, target)


def grammatical(grammar: Grammar, words: Sequence[str], target: Ty) -> bool:
    """Whether some choice of dictionary entries for ``words`` reduces to ``target``."""
    options = [grammar.entries(w) for w in words]
    return _Lattice(options, target, grammar.basics).ok


def parse(grammar: Grammar, words: Sequence[str], target: Ty):
    """
    The canonical parse of ``words`` at ``target``, or ``None``.

    Canonical means least in the order (entry index per word, left to right;
    then the cup list sorted by left endpoint).  Entries are fixed word by
    word, keeping only prefixes that still admit a reduction.
    """
    return next(_diagrams(grammar, words, target), None)


def enumerate_parses(grammar: Grammar, words: Sequence[str], target: Ty, limit: int = 10) -> list:
    """Up to ``limit`` distinct parses in canonical order."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return list(itertools.islice(_diagrams(grammar, words, target), limit))


def expand_induced_steps(grammar: Grammar) -> Grammar:
    """
    Equivalent grammar over the discrete poset on the same basic types.

    Every entry gains the variants obtained by moving tokens up the order,
    coordinate by coordinate; the original entries come first.
    """
    poset = grammar.basics
    entries = []
    for word, t in grammar.dictionary:
        options = [
            [(b, z) for b in sorted(poset.names) if token_leq((a, z), (b, z), poset)]
            for a, z in t
        ]
        entries.append((word, t))
        entries.extend((word, Ty(tuple(choice))) for choice in itertools.product(*options))
    return Grammar(grammar.vocabulary, BasicTypePoset.discrete(poset.names), tuple(entries))


def brute_force_reduce(t: Ty, s: Ty, basics: BasicTypePoset, max_tokens: int = 16) -> set:
    """
    Exhaustive search for every planar cup matching witnessing ``t <= s``.

    Test oracle: scans left to right keeping a stack of open cups, with no
    tables.  A cup is only opened when some later token could close it and
    enough tokens remain to close every open cup.
    """
    tokens, target = tuple(t), tuple(s)
    if len(tokens) > max_tokens:
        raise ScaleError(f"{len(tokens)} tokens exceeds the oracle guard of {max_tokens}")
    found = set()
    partner = [any(cancels(x, y, basics) for y in tokens[p + 1 :]) for p, x in enumerate(tokens)]

    def walk(p, stack, pairs, outputs):
        if len(stack) > len(tokens) - p:
            return
        if p == len(tokens):
            if not stack and len(outputs) == len(target):
                found.add(frozenset(pairs))
            return
        tok = tokens[p]
        # close the innermost open cup
        if stack and cancels(tokens[stack[-1]], tok, basics):
            walk(p + 1, stack[:-1], pairs + [(stack[-1], p)], outputs)
        # open a new cup
        if partner[p] and len(stack) < len(tokens) - p - 1:
            walk(p + 1, stack + [p], pairs, outputs)
        # leave as an output wire, only outside every cup
        if not stack and len(outputs) < len(target) and token_leq(tok, target[len(outputs)], basics):
            walk(p + 1, stack, pairs, outputs + [p])

    walk(0, [], [], [])
    return found
