"""
Backtracking search for structure homomorphisms.

Elements of the source are bound in a fixed order (pinned elements first,
then by decreasing number of tuple occurrences).  Candidate values start
from a node-consistency filter: a value must appear at the right column
of every table the element occurs in.  After each binding, every tuple
that became fully bound must exist in the target, and every partially
bound tuple must still have a supporting target row.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Mapping

from discorel.structure import RelStructure


def _plan(src: RelStructure, dst: RelStructure, pins: Mapping):
    src.signature.merge(dst.signature)
    elements = list(src.universe)
    known = set(elements)
    targets = set(dst.universe)
    for x, y in pins.items():
        if x not in known:
            raise ValueError(f"pinned element {x!r} is not in the source universe")
        if y not in targets:
            raise ValueError(f"pin target {y!r} is not in the target universe")
    atoms = [(symbol, row) for symbol in src.signature for row in sorted(src[symbol], key=repr)]
    degree = {x: 0 for x in elements}
    for _, row in atoms:
        for x in row:
            degree[x] += 1
    position = {x: k for k, x in enumerate(elements)}
    order = sorted(elements, key=lambda x: (x not in pins, -degree[x], position[x]))
    domains = {}
    for x in elements:
        if x in pins:
            candidates = [pins[x]]
        else:
            candidates = list(dst.universe)
        for symbol, row in atoms:
            for k, v in enumerate(row):
                if v == x:
                    column = {r[k] for r in dst[symbol]}
                    candidates = [c for c in candidates if c in column]
        domains[x] = candidates
    touching = {x: [(s, row) for s, row in atoms if x in row] for x in elements}
    return order, domains, touching


def _supported(symbol, row, binding, dst: RelStructure) -> bool:
    for target in dst[symbol]:
        trial = dict(binding)
        if all(trial.setdefault(x, t) == t for x, t in zip(row, target)):
            return True
    return False


def iter_homomorphisms(src: RelStructure, dst: RelStructure, pins: Mapping = None) -> Iterator[dict]:
    """Lazily yield every homomorphism ``src -> dst`` extending ``pins``."""
    pins = dict(pins or {})
    order, domains, touching = _plan(src, dst, pins)
    if any(() in src[s] and () not in dst[s] for s in src.signature):
        return
    binding = {}

    def extend(k):
        if k == len(order):
            yield dict(binding)
            return
        x = order[k]
        for value in domains[x]:
            binding[x] = value
            ok = True
            for symbol, row in touching[x]:
                if all(v in binding for v in row):
                    if tuple(binding[v] for v in row) not in dst[symbol]:
                        ok = False
                        break
                elif not _supported(symbol, row, binding, dst):
                    ok = False
                    break
            if ok:
                yield from extend(k + 1)
            del binding[x]

    yield from extend(0)


def find_homomorphism(src: RelStructure, dst: RelStructure, pins: Mapping = None):
    """Some homomorphism ``src -> dst`` extending ``pins``, or ``None``."""
    return next(iter_homomorphisms(src, dst, pins), None)


def enumerate_homomorphisms(src: RelStructure, dst: RelStructure, pins: Mapping = None, limit: int = None) -> list:
    """All homomorphisms extending ``pins`` in search order, at most ``limit`` of them."""
    return list(itertools.islice(iter_homomorphisms(src, dst, pins), limit))
