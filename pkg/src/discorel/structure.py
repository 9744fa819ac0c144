"""Relational signatures and finite structures (relational databases)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from discorel.errors import ArityMismatchError, SignatureMismatchError


@dataclass(frozen=True, init=False)
class RelSignature:
    """Finite set of relational symbols with their arities.

    >>> sig = RelSignature({"infl": 2, "phil": 1})
    >>> sig["infl"], "calc" in sig
    (2, False)
    """

    arity: Mapping

    def __init__(self, arity: Mapping = ()):
        arity = dict(arity)
        for symbol, n in arity.items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"arity of {symbol!r} must be a natural number, got {n!r}")
        object.__setattr__(self, "arity", MappingProxyType(dict(sorted(arity.items()))))

    def __getitem__(self, symbol):
        return self.arity[symbol]

    def __contains__(self, symbol):
        return symbol in self.arity

    def __iter__(self):
        return iter(self.arity)

    def __len__(self):
        return len(self.arity)

    def __eq__(self, other):
        return isinstance(other, RelSignature) and dict(self.arity) == dict(other.arity)

    def __hash__(self):
        return hash(tuple(self.arity.items()))

    def __repr__(self):
        return f"RelSignature({dict(self.arity)!r})"

    @property
    def symbols(self) -> frozenset:
        return frozenset(self.arity)

    def merge(self, other: RelSignature) -> RelSignature:
        """Union of two signatures that agree on their common symbols."""
        for symbol in self.symbols & other.symbols:
            if self[symbol] != other[symbol]:
                raise SignatureMismatchError(
                    f"{symbol!r} has arity {self[symbol]} and {other[symbol]}"
                )
        return RelSignature({**self.arity, **other.arity})

    @classmethod
    def from_atoms(cls, atoms: Iterable) -> RelSignature:
        arity = {}
        for symbol, args in atoms:
            if arity.setdefault(symbol, len(args)) != len(args):
                raise SignatureMismatchError(f"{symbol!r} used with arities {arity[symbol]} and {len(args)}")
        return cls(arity)


@dataclass(frozen=True, init=False)
class RelStructure:
    """
    A finite Sigma-structure: an ordered universe and one table per symbol.

    Symbols of the signature without a table are interpreted as empty.
    """

    signature: RelSignature
    universe: tuple
    tables: Mapping

    def __init__(self, signature, universe: Iterable, tables: Mapping):
        if not isinstance(signature, RelSignature):
            signature = RelSignature(signature)
        universe = tuple(dict.fromkeys(universe))
        members = set(universe)
        frozen = {}
        for symbol in signature:
            rows = frozenset(tuple(row) for row in tables.get(symbol, ()))
            for row in rows:
                if len(row) != signature[symbol]:
                    raise ArityMismatchError(
                        f"{symbol!r} has arity {signature[symbol]}, got row {row!r}"
                    )
                if not members.issuperset(row):
                    raise ValueError(f"row {row!r} of {symbol!r} leaves the universe")
            frozen[symbol] = rows
        extra = set(tables) - set(signature)
        if extra:
            raise SignatureMismatchError(f"tables for symbols outside the signature: {sorted(extra)}")
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "tables", MappingProxyType(frozen))

    def __getitem__(self, symbol) -> frozenset:
        return self.tables.get(symbol, frozenset())

    def __eq__(self, other):
        return (
            isinstance(other, RelStructure)
            and self.signature == other.signature
            and set(self.universe) == set(other.universe)
            and dict(self.tables) == dict(other.tables)
        )

    def __hash__(self):
        return hash((self.signature, frozenset(self.universe), frozenset(self.tables.items())))

    def __repr__(self):
        return f"RelStructure(universe={list(self.universe)!r}, tables={self.sorted_tables()!r})"

    @property
    def size(self) -> int:
        return sum(len(rows) for rows in self.tables.values())

    @classmethod
    def from_tables(cls, tables: Mapping, universe: Iterable = ()) -> RelStructure:
        """Infer the signature from non-empty tables; the universe gains every element used."""
        arity, elements = {}, list(universe)
        for symbol, rows in tables.items():
            rows = [tuple(r) for r in rows]
            arities = {len(r) for r in rows}
            if len(arities) > 1:
                raise ArityMismatchError(f"{symbol!r} mixes arities {sorted(arities)}")
            if arities:
                arity[symbol] = arities.pop()
            for row in rows:
                elements.extend(row)
        tables = {s: rows for s, rows in tables.items() if s in arity}
        return cls(RelSignature(arity), elements, tables)

    def sorted_tables(self) -> dict:
        """Tables as lists sorted by universe position, for stable output."""
        index = {e: i for i, e in enumerate(self.universe)}
        return {
            symbol: sorted(rows, key=lambda row: [index[e] for e in row])
            for symbol, rows in self.tables.items()
        }

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe),
            "signature": dict(self.signature.arity),
            "tables": {s: [list(r) for r in rows] for s, rows in self.sorted_tables().items()},
        }

    @classmethod
    def from_json(cls, data) -> RelStructure:
        if isinstance(data, str):
            data = json.loads(data)
        tables = {s: [tuple(r) for r in rows] for s, rows in data.get("tables", {}).items()}
        arity = dict(data.get("signature", {}))
        for symbol, rows in tables.items():
            for row in rows:
                if arity.setdefault(symbol, len(row)) != len(row):
                    raise ArityMismatchError(f"{symbol!r} has rows of different lengths")
        # an empty table of unknown arity is the same as an absent one
        tables = {s: rows for s, rows in tables.items() if s in arity}
        return cls(RelSignature(arity), data.get("universe", []), tables)

    @classmethod
    def load(cls, path) -> RelStructure:
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))
