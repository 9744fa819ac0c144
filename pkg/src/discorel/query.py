"""
Conjunctive queries, their text syntax, and the translations to and from wirings.

Text syntax::

    [lambda x0 x1 .] [exists x2 x3 .] R(x0,x2) & S(x2) & x1 = x3

``true`` is the empty conjunction.  Without a ``lambda`` head the free
variables are the unbound variables of the body in natural order.

>>> q = parse_query("exists x1 x2 . infl(x0,x1) & phil(x1) & disc(x1,x2) & calc(x2)")
>>> q.free, q.bound
(('x0',), ('x1', 'x2'))
>>> print(lambda_translate(theta_translate(q)))
exists x1 x2 . infl(x0,x1) & phil(x1) & disc(x1,x2) & calc(x2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from discorel.errors import TypeSyntaxError
from discorel.structure import RelSignature
from discorel.wiring import UnionFind, Wiring


def natural_key(name: str):
    """Sort key putting ``x2`` before ``x10``."""
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", str(name))]


@dataclass(frozen=True, eq=False)
class Query:
    """
    A conjunctive query in prenex normal form.

    ``free`` lists the free variables in output order and may repeat a
    variable when two outputs were equated.  ``atoms`` is duplicate-free
    and keeps insertion order for printing; equality ignores that order.
    """

    variables: tuple
    free: tuple
    atoms: tuple
    signature: RelSignature = None

    def __post_init__(self):
        atoms = tuple(dict.fromkeys((s, tuple(args)) for s, args in self.atoms))
        variables = tuple(dict.fromkeys(self.variables))
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "free", tuple(self.free))
        sig = RelSignature.from_atoms(atoms)
        if self.signature is not None:
            sig = self.signature.merge(sig)
            if sig != self.signature:
                raise ValueError(f"atoms use symbols outside the signature: {sorted(sig.symbols - self.signature.symbols)}")
        object.__setattr__(self, "signature", sig)
        known = set(variables)
        if not known.issuperset(self.free):
            raise ValueError("free variables must be variables of the query")
        for _, args in atoms:
            if not known.issuperset(args):
                raise ValueError(f"atom arguments {args} are not all declared variables")

    @classmethod
    def build(cls, atoms: Iterable, free: Sequence = (), bound: Sequence = (), equalities: Iterable = (), signature=None) -> Query:
        """
        Assemble a query, eliminating equalities by merging variables.

        A merged class is named after its first free member in natural order,
        or its least member if none is free.
        """
        atoms = [(s, tuple(args)) for s, args in atoms]
        names = list(dict.fromkeys([*free, *bound, *(v for _, args in atoms for v in args), *(v for e in equalities for v in e)]))
        index = {v: k for k, v in enumerate(names)}
        uf = UnionFind(len(names))
        for a, b in equalities:
            uf.union(index[a], index[b])
        members = {}
        for v in names:
            members.setdefault(uf.find(index[v]), []).append(v)
        free_set = set(free)
        rep = {}
        for group in members.values():
            frees = [v for v in group if v in free_set]
            name = min(frees or group, key=natural_key)
            for v in group:
                rep[v] = name
        new_free = tuple(rep[v] for v in free)
        variables = tuple(dict.fromkeys([*new_free, *(rep[v] for v in names)]))
        new_atoms = tuple((s, tuple(rep[v] for v in args)) for s, args in atoms)
        return cls(variables, new_free, new_atoms, signature)

    @property
    def bound(self) -> tuple:
        free = set(self.free)
        return tuple(v for v in self.variables if v not in free)

    def __eq__(self, other):
        return (
            isinstance(other, Query)
            and set(self.variables) == set(other.variables)
            and self.free == other.free
            and set(self.atoms) == set(other.atoms)
        )

    def __hash__(self):
        return hash((frozenset(self.variables), self.free, frozenset(self.atoms)))

    def _default_free(self) -> tuple:
        bound = set(self.bound)
        seen = {v for _, args in self.atoms for v in args if v not in bound}
        return tuple(sorted(seen, key=natural_key))

    def __str__(self):
        parts = []
        if self.free != self._default_free():
            parts.append("lambda " + " ".join(self.free) + " .")
        if self.bound:
            parts.append("exists " + " ".join(self.bound) + " .")
        body = " & ".join(f"{s}({','.join(args)})" for s, args in self.atoms)
        parts.append(body or "true")
        return " ".join(parts)

    def __repr__(self):
        return f"parse_query({str(self)!r})"

    def rename(self, mapping) -> Query:
        """Injective renaming of variables; names missing from ``mapping`` stay."""
        f = (lambda v: mapping.get(v, v)) if isinstance(mapping, dict) else mapping
        return Query(
            tuple(f(v) for v in self.variables),
            tuple(f(v) for v in self.free),
            tuple((s, tuple(f(v) for v in args)) for s, args in self.atoms),
            self.signature,
        )


def conjunction(queries: Sequence[Query]) -> Query:
    """Conjunction of queries; shared variable names are identified."""
    variables, free, atoms = [], [], []
    sig = RelSignature()
    for q in queries:
        variables += q.variables
        free += q.free
        atoms += q.atoms
        sig = sig.merge(q.signature)
    return Query(tuple(variables), tuple(free), tuple(atoms), sig)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[().,&=]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise TypeSyntaxError(f"unexpected character at {pos} in {text!r}")
        tokens.append(match.group("name") or match.group("punct"))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def parse_query(text: str, signature: RelSignature = None) -> Query:
    """Read the text syntax described in the module docstring."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise TypeSyntaxError(f"unexpected end of query {text!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise TypeSyntaxError(f"expected {expected!r}, got {tok!r} in {text!r}")
        pos += 1
        return tok

    def names_until_dot():
        names = []
        while peek() not in (".", None):
            tok = take()
            if not re.match(r"[A-Za-z_]", tok):
                raise TypeSyntaxError(f"expected a variable, got {tok!r}")
            names.append(tok)
        take(".")
        return names

    head = None
    if peek() == "lambda":
        take()
        head = names_until_dot()
    bound = []
    while peek() == "exists":
        take()
        bound += names_until_dot()
    atoms, equalities = [], []
    while True:
        tok = take()
        if tok == "true":
            pass
        elif peek() == "(":
            take("(")
            args = []
            while peek() != ")":
                args.append(take())
                if peek() == ",":
                    take(",")
                elif peek() != ")":
                    raise TypeSyntaxError(f"expected ',' or ')' in {text!r}")
            take(")")
            atoms.append((tok, tuple(args)))
        elif peek() == "=":
            take("=")
            equalities.append((tok, take()))
        else:
            raise TypeSyntaxError(f"expected an atom, an equality or 'true' at {tok!r}")
        if peek() is None:
            break
        take("&")
    if head is None:
        body_vars = [v for _, args in atoms for v in args] + [v for e in equalities for v in e]
        head = sorted({v for v in body_vars if v not in bound}, key=natural_key)
    overlap = set(head) & set(bound)
    if overlap:
        raise TypeSyntaxError(f"variables both free and bound: {sorted(overlap)}")
    return Query.build(atoms, head, bound, equalities, signature)


def lambda_translate(d: Wiring) -> Query:
    """
    The query of a wiring: a variable per wire, an atom per box.

    Boundary wires become the free variables ``x0, x1, ...`` in order of
    first appearance along ``dom + cod``; the other wires are bound and
    numbered next, in wire-id order.
    """
    order = list(dict.fromkeys(d.boundary))
    order += [w for w in d.wires if w not in set(order)]
    name = {w: f"x{k}" for k, w in enumerate(order)}
    return Query(
        tuple(name[w] for w in order),
        tuple(name[w] for w in d.boundary),
        tuple((s, tuple(name[w] for w in ports)) for s, ports in d.boxes),
    )


def theta_translate(q: Query) -> Wiring:
    """The wiring of a query: ``0 -> len(q.free)``, one wire per variable."""
    wire = {v: k for k, v in enumerate(q.variables)}
    return Wiring(
        len(q.variables),
        tuple((s, tuple(wire[v] for v in args)) for s, args in q.atoms),
        (),
        tuple(wire[v] for v in q.free),
    )
