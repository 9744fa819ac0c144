"""
Evaluation, containment and entailment by reduction to homomorphism search.

>>> q = parse_query("exists y . R(x,y) & S(y)")
>>> contains(q, parse_query("exists y . R(x,y)"))
True
>>> contains(parse_query("exists y . R(x,y)"), q)
False
"""

from __future__ import annotations

from discorel.errors import FreeArityMismatchError
from discorel.homomorphism import find_homomorphism, iter_homomorphisms
from discorel.lexicon import Lexicon, apply_L
from discorel.pregroup import ParseDiagram
from discorel.query import Query, lambda_translate, parse_query  # noqa: F401
from discorel.structure import RelStructure


def canonical_structure(q: Query) -> RelStructure:
    """The structure whose elements are the variables and whose rows are the atoms."""
    tables = {}
    for symbol, args in q.atoms:
        tables.setdefault(symbol, set()).add(args)
    return RelStructure(q.signature, q.variables, tables)


def evaluate(q: Query, k: RelStructure) -> set:
    """
    Answers of ``q`` in ``k``: tuples aligned with ``q.free``, one per
    homomorphism from the canonical structure, duplicates collapsed.
    """
    return {tuple(h[v] for v in q.free) for h in iter_homomorphisms(canonical_structure(q), k)}


def contains(q1: Query, q2: Query) -> bool:
    """
    Whether ``q1`` is contained in ``q2`` on every structure.

    Holds iff the canonical structure of ``q2`` maps into that of ``q1``
    sending the free list of ``q2`` position-wise onto the free list of ``q1``.
    """
    if len(q1.free) != len(q2.free):
        raise FreeArityMismatchError(
            f"free arities differ: {len(q1.free)} and {len(q2.free)}"
        )
    pins = {}
    for x, y in zip(q2.free, q1.free):
        if pins.setdefault(x, y) != y:
            return False
    return find_homomorphism(canonical_structure(q2), canonical_structure(q1), pins) is not None


def equivalent(q1: Query, q2: Query) -> bool:
    return contains(q1, q2) and contains(q2, q1)


def sentence_query(r: ParseDiagram, lexicon: Lexicon) -> Query:
    """The query of a parse under a lexicon."""
    return lambda_translate(apply_L(lexicon, r))


def entails(r1: ParseDiagram, r2: ParseDiagram, lexicon: Lexicon) -> bool:
    """Whether the meaning of ``r1`` is below that of ``r2`` in the free model."""
    if r1.target != r2.target:
        raise ValueError(f"parses target different types: {r1.target} and {r2.target}")
    return contains(sentence_query(r1, lexicon), sentence_query(r2, lexicon))
