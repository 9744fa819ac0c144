"""
Free models: sending parse diagrams to wirings.

A :class:`Lexicon` fixes how many wires each basic type carries and a
wiring template for every dictionary entry.  :func:`apply_L` tensors the
templates of a parse and glues the wire bundles of every cup.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from discorel.errors import ArityMismatchError, MissingEntryError
from discorel.pregroup import ParseDiagram, Ty
from discorel.structure import RelSignature
from discorel.wiring import Wiring, box, compose, quotient, tensor


@dataclass(frozen=True)
class Lexicon:
    basic_arity: Mapping = field(default_factory=dict)
    entries: Mapping = field(default_factory=dict)  # (word, Ty) -> Wiring

    def __post_init__(self):
        object.__setattr__(self, "basic_arity", MappingProxyType(dict(self.basic_arity)))
        entries = {}
        for (word, t), template in self.entries.items():
            t = t if isinstance(t, Ty) else Ty.parse(t)
            if template.dom:
                raise ValueError(f"template of ({word}, {t}) must have an empty domain")
            if len(template.cod) != self.wire_count(t):
                raise ArityMismatchError(
                    f"template of ({word}, {t}) has {len(template.cod)} outputs, "
                    f"type needs {self.wire_count(t)}"
                )
            entries[word, t] = template
        object.__setattr__(self, "entries", MappingProxyType(entries))
        self.signature  # raises on clashing arities

    def arity(self, basic: str) -> int:
        return self.basic_arity.get(basic, 1)

    def wire_count(self, t: Ty) -> int:
        return sum(self.arity(b) for b, _ in t)

    def template(self, word: str, t: Ty) -> Wiring:
        try:
            return self.entries[word, t]
        except KeyError:
            raise MissingEntryError(f"no template for ({word}, {t})") from None

    @property
    def signature(self) -> RelSignature:
        sig = RelSignature()
        for template in self.entries.values():
            sig = sig.merge(template.signature)
        return sig

    def symbol_entry(self, word: str, t, symbol: str) -> Lexicon:
        """Copy with ``(word, t)`` sent to one fresh box over all of its wires."""
        t = t if isinstance(t, Ty) else Ty.parse(t)
        entries = dict(self.entries)
        entries[word, t] = box(symbol, self.wire_count(t))
        return Lexicon(self.basic_arity, entries)

    @classmethod
    def from_json(cls, data) -> Lexicon:
        if isinstance(data, str):
            data = json.loads(data)
        arity = dict(data.get("basic_arity", {}))
        probe = cls(arity, {})
        entries = {}
        for entry in data["entries"]:
            t = Ty.parse(entry["type"])
            template_spec = entry["template"]
            if template_spec["kind"] == "symbol":
                template = box(template_spec["name"], probe.wire_count(t))
            elif template_spec["kind"] == "wiring":
                boxes = [(b["symbol"], tuple(b["ports"])) for b in template_spec.get("boxes", [])]
                template = Wiring(template_spec["wires"], tuple(boxes), (), tuple(template_spec["codomain"]))
            else:
                raise ValueError(f"unknown template kind {template_spec['kind']!r}")
            entries[entry["word"], t] = template
        return cls(arity, entries)

    @classmethod
    def load(cls, path) -> Lexicon:
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))

    def to_json(self) -> dict:
        items = []
        for (word, t), template in self.entries.items():
            symbol = template.boxes[0][0] if len(template.boxes) == 1 else None
            if symbol is not None and template == box(symbol, self.wire_count(t)):
                template_spec = {"kind": "symbol", "name": symbol}
            else:
                template_spec = {
                    "kind": "wiring",
                    "wires": template.n_wires,
                    "boxes": [{"symbol": s, "ports": list(p)} for s, p in template.boxes],
                    "codomain": list(template.cod),
                }
            items.append({"word": word, "type": str(t), "template": template_spec})
        return {"basic_arity": dict(self.basic_arity), "entries": items}


def apply_L(lexicon: Lexicon, r: ParseDiagram) -> Wiring:  # noqa: N802
    """
    The wiring of a parse: word templates side by side, then one gluing per cup.

    A cup joins the bundle of its left token to the reversed bundle of its
    right token.  The codomain lists the bundles of the output positions.
    """
    templates = [lexicon.template(w, t) for w, t in zip(r.words, r.assignment)]
    words = tensor(*templates)
    bundles, slot = [], 0
    for tok in r.tokens:
        n = lexicon.arity(tok[0])
        bundles.append(list(range(slot, slot + n)))
        slot += n
    merges = []
    for i, j in r.matching:
        left, right = bundles[i], bundles[j]
        if len(left) != len(right):
            raise ArityMismatchError(
                f"cup ({i}, {j}) joins bundles of {len(left)} and {len(right)} wires"
            )
        merges.extend(zip(left, reversed(right)))
    outputs = tuple(w for p in r.output for w in bundles[p])
    gluing = quotient(slot, (), tuple(range(slot)), outputs, merges)
    return compose(words, gluing)

