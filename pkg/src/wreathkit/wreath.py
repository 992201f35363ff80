"""Wreaths around a monoid A acting by A⊗−, and their wreath products.

A wreath is an object S with

    nu:     S⊗S -> S⊗A
    sigma0: I   -> S⊗A
    lam:    A⊗S -> S⊗A

subject to seven equations, numbered as below:

    1  λ against μ        2  λ against η        3  σ against λ
    4  ν against λ        5  ν associativity    6  σ left unit
    7  σ right unit
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError, ValidationError
from .report import AxiomReport, equation
from .structures import MonoidObj
from .tensor import I, Mor, Word, as_word, compose, identity, tensor

__all__ = ["WreathData", "check_wreath", "wreath_product", "from_distributive_law", "identity_wreath", "WREATH_AXIOMS"]

WREATH_AXIOMS = {
    "axiom1": "λ vs μ",
    "axiom2": "λ vs η",
    "axiom3": "σ vs λ",
    "axiom4": "ν vs λ",
    "axiom5": "ν coassoc-like",
    "axiom6": "σ unit left",
    "axiom7": "σ unit right",
}


@dataclass(frozen=True)
class WreathData:
    monoid: MonoidObj
    s: Word
    nu: Mor
    sigma0: Mor
    lam: Mor

    def __post_init__(self):
        object.__setattr__(self, "s", as_word(self.s))
        a, s = self.monoid.carrier, self.s
        for name, m, dom, cod in (
            ("nu", self.nu, s + s, s + a),
            ("sigma0", self.sigma0, I, s + a),
            ("lambda", self.lam, a + s, s + a),
        ):
            if m.dom != dom or m.cod != cod:
                raise ShapeError(f"{name} should be {dom} -> {cod}, got {m.dom} -> {m.cod}")
            if m.field != self.monoid.field:
                raise ShapeError(f"{name} is over {m.field}, monoid over {self.monoid.field}")

    @property
    def field(self):
        return self.monoid.field


def check_wreath(wd: WreathData) -> AxiomReport:
    a, s, f = wd.monoid.carrier, wd.s, wd.field
    mu, eta = wd.monoid.mul, wd.monoid.unit
    nu, sig, lam = wd.nu, wd.sigma0, wd.lam
    ia, i_s = identity(a, f), identity(s, f)
    smu = tensor(i_s, mu)
    s_eta = tensor(i_s, eta)

    sides = {
        "axiom1": (
            compose(lam, tensor(mu, i_s)),
            compose(smu, tensor(lam, ia), tensor(ia, lam)),
        ),
        "axiom2": (compose(lam, tensor(eta, i_s)), s_eta),
        "axiom3": (
            compose(smu, tensor(sig, ia)),
            compose(smu, tensor(lam, ia), tensor(ia, sig)),
        ),
        "axiom4": (
            compose(smu, tensor(nu, ia), tensor(i_s, lam), tensor(lam, i_s)),
            compose(smu, tensor(lam, ia), tensor(ia, nu)),
        ),
        "axiom5": (
            compose(smu, tensor(nu, ia), tensor(i_s, nu)),
            compose(smu, tensor(nu, ia), tensor(i_s, lam), tensor(nu, i_s)),
        ),
        "axiom6": (compose(smu, tensor(nu, ia), tensor(i_s, sig)), s_eta),
        "axiom7": (compose(smu, tensor(nu, ia), tensor(i_s, lam), tensor(sig, i_s)), s_eta),
    }
    r = AxiomReport("wreath")
    for name, (lhs, rhs) in sides.items():
        r.entries.append(equation(name, lhs, rhs, WREATH_AXIOMS[name]))
    return r


def wreath_product(wd: WreathData, validate: bool = True, right_bracketed: bool = False) -> MonoidObj:
    """Monoid on S⊗A: (1⊗μ₃)(ν⊗1⊗1)(1⊗λ⊗1) with unit sigma0.

    μ₃ is μ(μ⊗1), or μ(1⊗μ) with ``right_bracketed``.
    """
    if validate:
        rep = check_wreath(wd)
        if not rep.passed:
            raise ValidationError("wreath axioms fail: " + ", ".join(e.name for e in rep.failures), rep)
    a, s, f = wd.monoid.carrier, wd.s, wd.field
    mu = wd.monoid.mul
    ia, i_s = identity(a, f), identity(s, f)
    mu3 = compose(mu, tensor(ia, mu)) if right_bracketed else compose(mu, tensor(mu, ia))
    mul = compose(tensor(i_s, mu3), tensor(wd.nu, ia, ia), tensor(i_s, wd.lam, ia))
    return MonoidObj(s + a, mul, wd.sigma0)


def from_distributive_law(s: MonoidObj, a: MonoidObj, lam: Mor) -> WreathData:
    """Wreath whose ν and σ come from a monoid structure on S."""
    x, y = s.carrier, a.carrier
    if lam.dom != y + x or lam.cod != x + y:
        raise ShapeError(f"distributive law should be {y + x} -> {x + y}, got {lam.dom} -> {lam.cod}")
    nu = compose(tensor(identity(x, s.field), a.unit), s.mul)
    return WreathData(a, x, nu, tensor(s.unit, a.unit), lam)


def identity_wreath(a: MonoidObj) -> WreathData:
    return WreathData(a, I, a.unit, a.unit, identity(a.carrier, a.field))
