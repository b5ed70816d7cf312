"""Curated formula corpus and corpus files.

Each entry carries a name, a formula, and an expected classification:

    "IPC"          intuitionistic theorem
    "CPC_not_IPC"  classical tautology that is not intuitionistically valid
    "JAN"          weak-excluded-middle marker: valid exactly in algebras
                   whose greatest element is join-irreducible
    "free"         no expectation

Corpus files are JSON lists of {"name", "formula", "expect"} objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputError
from .formulas import Formula, parse

CLASSIFICATIONS = ("IPC", "CPC_not_IPC", "JAN", "free")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    formula: Formula
    expect: str

    def as_dict(self) -> dict:
        from .formulas import pretty
        return {"name": self.name, "formula": pretty(self.formula), "expect": self.expect}


_CURATED: list[tuple[str, str, str]] = [
    ("refl", "p1 -> p1", "IPC"),
    ("k-axiom", "p1 -> (p2 -> p1)", "IPC"),
    ("s-axiom", "(p1 -> (p2 -> p3)) -> ((p1 -> p2) -> (p1 -> p3))", "IPC"),
    ("and-elim-l", "p1 & p2 -> p1", "IPC"),
    ("and-elim-r", "p1 & p2 -> p2", "IPC"),
    ("or-intro-l", "p1 -> p1 | p2", "IPC"),
    ("or-intro-r", "p2 -> p1 | p2", "IPC"),
    ("or-elim", "(p1 -> p3) -> ((p2 -> p3) -> (p1 | p2 -> p3))", "IPC"),
    ("no-contradiction", "~(p1 & ~p1)", "IPC"),
    ("contraposition", "(p1 -> p2) -> (~p2 -> ~p1)", "IPC"),
    ("double-neg-intro", "p1 -> ~~p1", "IPC"),
    ("triple-neg", "~~~p1 -> ~p1", "IPC"),
    ("glivenko-lem", "~~(p1 | ~p1)", "IPC"),
    ("distrib-to", "p1 & (p2 | p3) -> (p1 & p2) | (p1 & p3)", "IPC"),
    ("distrib-from", "(p1 & p2) | (p1 & p3) -> p1 & (p2 | p3)", "IPC"),
    ("efq", "bot -> p1", "IPC"),
    ("top-intro", "p1 -> top", "IPC"),
    ("or-curry", "((p1 | p2) -> p3) -> (p1 -> p3) & (p2 -> p3)", "IPC"),
    ("and-split", "(p1 -> p2 & p3) -> (p1 -> p2) & (p1 -> p3)", "IPC"),
    ("glivenko-dne", "~~(~~p1 -> p1)", "IPC"),
    ("transitivity", "(p1 -> p2) & (p2 -> p3) -> (p1 -> p3)", "IPC"),
    ("lem", "p1 | ~p1", "CPC_not_IPC"),
    ("dne", "~~p1 -> p1", "CPC_not_IPC"),
    ("peirce", "((p1 -> p2) -> p1) -> p1", "CPC_not_IPC"),
    ("dummett", "(p1 -> p2) | (p2 -> p1)", "CPC_not_IPC"),
    ("de-morgan-and", "~(p1 & p2) -> ~p1 | ~p2", "CPC_not_IPC"),
    ("consequentia", "(~p1 -> p1) -> p1", "CPC_not_IPC"),
    ("wlem", "~p1 | ~~p1", "JAN"),
    ("plain-imp", "p1 -> p2", "free"),
    ("plain-neg", "~p1", "free"),
    ("or-to-and", "p1 | p2 -> p1 & p2", "free"),
    ("double-neg", "~~p1", "free"),
    ("modus-shift", "(p1 -> p2) -> p2", "free"),
]


def curated_corpus() -> list[CorpusEntry]:
    return [CorpusEntry(name, parse(text), expect) for name, text, expect in _CURATED]


def corpus_pairs(entries) -> list[tuple[str, Formula]]:
    return [(e.name, e.formula) for e in entries]


def load_corpus(path: str) -> list[CorpusEntry]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise InputError(f"{path}: {exc}")
    if not isinstance(doc, list):
        raise InputError("corpus file must be a JSON list")
    out = []
    seen = set()
    for item in doc:
        try:
            name = str(item["name"])
            formula = parse(str(item["formula"]))
            expect = str(item.get("expect", "free"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad corpus entry {item!r}: {exc}")
        if expect not in CLASSIFICATIONS:
            raise InputError(f"bad classification {expect!r} for {name!r}")
        if name in seen:
            raise InputError(f"duplicate corpus name {name!r}")
        seen.add(name)
        out.append(CorpusEntry(name, formula, expect))
    return out


def dump_corpus(entries) -> str:
    return json.dumps([e.as_dict() for e in entries], indent=2, sort_keys=True) + "\n"
