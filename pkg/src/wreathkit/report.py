"""Law-check reports: every axiom is evaluated, failures carry a witness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ShapeError
from .tensor import Mor


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_plain(t) for t in x]
    return x


@dataclass(frozen=True)
class Witness:
    """Where two sides first differ.

    For matrix equations ``index`` is ``(row, col)`` and ``basis`` holds the
    per-factor indices of the codomain and domain words.  For table laws the
    index is a tuple of element labels.
    """

    index: tuple
    left: object
    right: object
    basis: tuple | None = None
    where: str = ""

    def to_dict(self):
        d = {"index": _plain(self.index), "left": _plain(self.left), "right": _plain(self.right)}
        if self.basis is not None:
            d["basis"] = {"cod": list(self.basis[0]), "dom": list(self.basis[1])}
        if self.where:
            d["where"] = self.where
        return d

    def __str__(self):
        where = f"entry {self.index}"
        if self.basis is not None:
            where += f" (cod {self.basis[0]}, dom {self.basis[1]})"
        if self.where:
            where = f"{self.where}, {where}"
        return f"{where}: left={_plain(self.left)} right={_plain(self.right)}"


@dataclass(frozen=True)
class AxiomEntry:
    name: str
    passed: bool
    description: str = ""
    witness: Witness | None = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing entry {self.name} needs a witness")

    def to_dict(self):
        d = {"name": self.name, "description": self.description, "passed": self.passed}
        d["witness"] = self.witness.to_dict() if self.witness else None
        return d


@dataclass
class AxiomReport:
    kind: str
    entries: list[AxiomEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name: str) -> AxiomEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    @property
    def failures(self) -> list[AxiomEntry]:
        return [e for e in self.entries if not e.passed]

    def extend(self, other: "AxiomReport", prefix: str = ""):
        for e in other.entries:
            self.entries.append(AxiomEntry(prefix + e.name, e.passed, e.description, e.witness))
        return self

    def to_dict(self):
        return {"kind": self.kind, "passed": self.passed, "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"{self.kind}: {'PASS' if self.passed else 'FAIL'}"]
        for e in self.entries:
            mark = "ok  " if e.passed else "FAIL"
            desc = f"  ({e.description})" if e.description else ""
            lines.append(f"  {mark} {e.name}{desc}")
            if e.witness is not None:
                lines.append(f"       witness {e.witness}")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def equation(name: str, lhs: Mor, rhs: Mor, description: str = "") -> AxiomEntry:
    """Compare two parallel morphisms exactly."""
    if lhs.dom != rhs.dom or lhs.cod != rhs.cod:
        raise ShapeError(f"{name}: sides have types {lhs.dom} -> {lhs.cod} and {rhs.dom} -> {rhs.cod}")
    if lhs.field != rhs.field:
        raise ShapeError(f"{name}: sides live over {lhs.field} and {rhs.field}")
    pos = lhs.first_difference(rhs)
    if pos is None:
        return AxiomEntry(name, True, description)
    i, j = pos
    w = Witness((i, j), lhs.entry(i, j), rhs.entry(i, j), (lhs.cod.unravel(i), lhs.dom.unravel(j)))
    return AxiomEntry(name, False, description, w)


def equations(name: str, cases, description: str = "") -> AxiomEntry:
    """One entry for a family of equations; ``cases`` yields ``(where, lhs, rhs)``.

    The first failing instance supplies the witness.
    """
    for where, lhs, rhs in cases:
        e = equation(name, lhs, rhs, description)
        if not e.passed:
            w = e.witness
            return AxiomEntry(name, False, description, Witness(w.index, w.left, w.right, w.basis, where))
    return AxiomEntry(name, True, description)


def first_failure(name: str, cases, description: str = "") -> AxiomEntry:
    """Table-law entry; ``cases`` yields ``(index, left, right)`` in order."""
    for index, left, right in cases:
        if left != right:
            return AxiomEntry(name, False, description, Witness(tuple(index), left, right))
    return AxiomEntry(name, True, description)
