"""
Arrows of the free Cartesian bicategory as wire-sharing hypergraphs.

A :class:`Wiring` has wires ``0 .. n_wires - 1``, boxes labelled by
relational symbols whose ports are wires, and ordered domain and codomain
boundaries.  A wire may touch any number of ports and boundary slots;
that sharing is the Frobenius structure.  Composition glues boundaries
with a union-find.

>>> snake = compose(tensor(identity(1), cap()), tensor(cup(), identity(1)))
>>> is_isomorphic(snake, identity(1))
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from discorel.errors import ArityMismatchError, BoundaryMismatchError
from discorel.structure import RelSignature, RelStructure


@dataclass(frozen=True)
class Wiring:
    n_wires: int
    boxes: tuple = ()  # ((symbol, (wire, ...)), ...)
    dom: tuple = ()
    cod: tuple = ()

    def __post_init__(self):
        boxes = tuple((symbol, tuple(ports)) for symbol, ports in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        used = [w for _, ports in boxes for w in ports] + list(self.dom) + list(self.cod)
        if any(not 0 <= w < self.n_wires for w in used):
            raise ValueError(f"wire reference out of range 0..{self.n_wires - 1}")
        RelSignature.from_atoms(boxes)

    @property
    def wires(self) -> range:
        return range(self.n_wires)

    @property
    def signature(self) -> RelSignature:
        return RelSignature.from_atoms(self.boxes)

    @property
    def boundary(self) -> tuple:
        return self.dom + self.cod

    def __repr__(self):
        boxes = ", ".join(f"{s}({','.join(map(str, p))})" for s, p in self.boxes)
        return f"Wiring({self.n_wires}, [{boxes}], dom={list(self.dom)}, cod={list(self.cod)})"


class UnionFind:
    """Disjoint sets over ``0 .. n - 1``; the representative is the smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i != j:
            self.parent[max(i, j)] = min(i, j)


def quotient(n_wires: int, boxes, dom, cod, merges: Iterable) -> Wiring:
    """Identify the wire pairs in ``merges`` and renumber representatives in id order."""
    uf = UnionFind(n_wires)
    for a, b in merges:
        uf.union(a, b)
    roots = sorted({uf.find(w) for w in range(n_wires)})
    label = {r: k for k, r in enumerate(roots)}

    def rename(w):
        return label[uf.find(w)]

    return Wiring(
        len(roots),
        tuple((s, tuple(rename(w) for w in ports)) for s, ports in boxes),
        tuple(rename(w) for w in dom),
        tuple(rename(w) for w in cod),
    )


def _shift(d: Wiring, offset: int):
    boxes = tuple((s, tuple(w + offset for w in ports)) for s, ports in d.boxes)
    return boxes, tuple(w + offset for w in d.dom), tuple(w + offset for w in d.cod)


def tensor(*ds: Wiring) -> Wiring:
    """Side-by-side juxtaposition; ``tensor()`` is the empty wiring."""
    n, boxes, dom, cod = 0, (), (), ()
    for d in ds:
        b, dm, cd = _shift(d, n)
        n, boxes, dom, cod = n + d.n_wires, boxes + b, dom + dm, cod + cd
    return Wiring(n, boxes, dom, cod)


def compose(d1: Wiring, d2: Wiring) -> Wiring:
    """Sequential composition: glue ``d1.cod[k]`` to ``d2.dom[k]``."""
    if len(d1.cod) != len(d2.dom):
        raise BoundaryMismatchError(
            f"codomain of length {len(d1.cod)} cannot meet domain of length {len(d2.dom)}"
        )
    boxes, dom, cod = _shift(d2, d1.n_wires)
    merges = zip(d1.cod, dom)
    return quotient(d1.n_wires + d2.n_wires, d1.boxes + boxes, d1.dom, cod, merges)


def identity(n: int) -> Wiring:
    return Wiring(n, (), tuple(range(n)), tuple(range(n)))


def spider(m: int, n: int) -> Wiring:
    """A single wire with ``m`` domain legs and ``n`` codomain legs."""
    return Wiring(1, (), (0,) * m, (0,) * n)


def cap() -> Wiring:
    return spider(0, 2)


def cup() -> Wiring:
    return spider(2, 0)


def swap() -> Wiring:
    return Wiring(2, (), (0, 1), (1, 0))


def box(symbol: str, arity: int) -> Wiring:
    """A generator ``symbol : 0 -> arity``."""
    return Wiring(arity, ((symbol, tuple(range(arity))),), (), tuple(range(arity)))


def _refine(colors: dict, boxes) -> dict:
    """Colour refinement until the partition into colour classes is stable."""
    while True:
        occurrences = {w: [] for w in colors}
        for symbol, ports in boxes:
            shape = (symbol, tuple(colors[p] for p in ports))
            for k, w in enumerate(ports):
                occurrences[w].append((shape, k))
        signature = {w: (colors[w], tuple(sorted(occurrences[w]))) for w in colors}
        ranks = {sig: k for k, sig in enumerate(sorted(set(signature.values())))}
        refined = {w: ranks[signature[w]] for w in colors}
        if len(ranks) == len(set(colors.values())):
            return refined
        colors = refined


def canonical_form(d: Wiring) -> tuple:
    """
    A relabelling-invariant key: equal keys iff the wirings are isomorphic
    by a wire bijection preserving boxes and both boundaries.

    Boundary wires are labelled by first appearance; interior wires by
    individualisation and refinement, keeping the least resulting key.
    """
    boundary = list(dict.fromkeys(d.boundary))
    touched = {w for _, ports in d.boxes for w in ports} | set(boundary)
    isolated = d.n_wires - len(touched)
    colors = {w: k for k, w in enumerate(boundary)}
    colors.update({w: len(boundary) for w in sorted(touched - set(boundary))})
    boxes = sorted(d.boxes, key=lambda b: (b[0], len(b[1])))

    def key(labels):
        return (
            len(touched),
            isolated,
            tuple(labels[w] for w in d.dom),
            tuple(labels[w] for w in d.cod),
            tuple(sorted((s, tuple(labels[w] for w in ports)) for s, ports in boxes)),
        )

    best = None

    def search(colors):
        nonlocal best
        colors = _refine(colors, boxes)
        classes = {}
        for w, c in colors.items():
            classes.setdefault(c, []).append(w)
        ties = sorted((c, ws) for c, ws in classes.items() if len(ws) > 1)
        if not ties:
            candidate = key(colors)
            if best is None or candidate < best:
                best = candidate
            return
        c, members = ties[0]
        for w in members:
            individual = {v: (col if col != c or v == w else col + 0.5) for v, col in colors.items()}
            search(individual)

    search(colors)
    return best


def is_isomorphic(d1: Wiring, d2: Wiring) -> bool:
    return canonical_form(d1) == canonical_form(d2)


def direct_eval(d: Wiring, structure: RelStructure) -> set:
    """
    Interpret ``d`` in the relations of ``structure``: join the box tables
    on shared wires and project onto ``dom + cod``.

    Wires touching no box range over the whole universe.
    """
    for symbol, ports in d.boxes:
        if symbol in structure.signature and structure.signature[symbol] != len(ports):
            raise ArityMismatchError(
                f"box {symbol!r} has {len(ports)} ports, table has arity {structure.signature[symbol]}"
            )
    partial = [{}]
    for symbol, ports in d.boxes:
        extended = []
        for binding in partial:
            for row in structure[symbol]:
                new = dict(binding)
                if all(new.setdefault(w, e) == e for w, e in zip(ports, row)):
                    extended.append(new)
        partial = extended
    bound_by_boxes = {w for _, ports in d.boxes for w in ports}
    free = [w for w in dict.fromkeys(d.boundary) if w not in bound_by_boxes]
    loose = set(d.wires) - bound_by_boxes - set(free)
    if loose and not structure.universe:
        return set()
    result = set()
    for binding in partial:
        for values in itertools.product(structure.universe, repeat=len(free)):
            full = {**binding, **dict(zip(free, values))}
            result.add(tuple(full[w] for w in d.boundary))
    return result
