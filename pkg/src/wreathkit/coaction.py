"""Twisted coactions of a bimonoid B on a monoid A and what they generate.

A twisted coaction is a monoid morphism ``γ: A -> A⊗B`` with a normalized
2-cocycle ``τ: I -> A⊗B⊗B``.  It yields a mixed opwreath on C = B around A.
A further ``𝔡: B -> A⊗B⊗B`` (with A commutative) makes that opwreath
opmonoidal, so its Kleisli category becomes monoidal via

    ψ_{X,X'} = (1_A ⊗ 1_B ⊗ c_{B,X} ⊗ 1_X') ∘ (𝔡 ⊗ 1_X ⊗ 1_X')
    φ_{X,X'} = (μ ⊗ 1_X ⊗ 1_X') ∘ (1_A ⊗ c_{X,A} ⊗ 1_X')

Morphism-quantified laws are checked on matrix units only; every side is
linear in each morphism variable, so this is complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import SearchSpaceError, ShapeError, ValidationError
from .mixed import KleisliMor, MixedOpwreathData, check_mixed_opwreath, convolve
from .parallel import parallel_map
from .report import AxiomEntry, AxiomReport, Witness, equation, equations
from .structures import BimonoidObj, MonoidObj, bullet, is_commutative, tensor_monoid
from .tensor import I, Mor, Word, as_word, braid, compose, identity, matrix_units, shuffle, tensor, whisker

__all__ = [
    "TwistedCoactionData",
    "MonoidalTwistedCoactionData",
    "OpmonoidalStructure",
    "check_twisted_coaction",
    "generated_opwreath",
    "verify_convolution_lemma",
    "check_monoidal_twisted_coaction",
    "build_opmonoidal",
    "check_opmonoidal",
    "kleisli_tensor",
    "check_eckmann_hilton",
    "trivial_coaction",
    "search_monoidal_dd",
    "default_generators",
]


def _expect(m: Mor, dom: Word, cod: Word, what: str, field):
    if m.dom != dom or m.cod != cod:
        raise ShapeError(f"{what} should be {dom} -> {cod}, got {m.dom} -> {m.cod}")
    if m.field != field:
        raise ShapeError(f"{what} is over {m.field}, expected {field}")


@dataclass(frozen=True)
class TwistedCoactionData:
    a: MonoidObj
    b: BimonoidObj
    gamma: Mor
    tau: Mor

    def __post_init__(self):
        a, b = self.a.carrier, self.b.carrier
        _expect(self.gamma, a, a + b, "gamma", self.a.field)
        _expect(self.tau, I, a + b + b, "tau", self.a.field)
        if self.b.field != self.a.field:
            raise ShapeError("A and B over different fields")

    @property
    def field(self):
        return self.a.field

    def monoid_ab(self, copies: int = 1) -> MonoidObj:
        """``A⊗B⊗...⊗B`` with ``copies`` factors of B."""
        m = self.a
        for _ in range(copies):
            m = tensor_monoid(m, self.b.monoid)
        return m


@dataclass(frozen=True)
class MonoidalTwistedCoactionData:
    base: TwistedCoactionData
    dd: Mor

    def __post_init__(self):
        a, b = self.base.a.carrier, self.base.b.carrier
        _expect(self.dd, b, a + b + b, "dd", self.base.field)


def trivial_coaction(a: MonoidObj, b: BimonoidObj) -> TwistedCoactionData:
    """``γ = 1_A ⊗ η_B`` and ``τ = η_A ⊗ η_B ⊗ η_B``."""
    gamma = tensor(identity(a.carrier, a.field), b.unit)
    return TwistedCoactionData(a, b, gamma, tensor(a.unit, b.unit, b.unit))


def check_twisted_coaction(tc: TwistedCoactionData) -> AxiomReport:
    a, b, f = tc.a.carrier, tc.b.carrier, tc.field
    mu, eta = tc.a.mul, tc.a.unit
    delta, eps = tc.b.comul, tc.b.counit
    gamma, tau = tc.gamma, tc.tau
    ia, ib = identity(a, f), identity(b, f)
    ab, abb, abbb = tc.monoid_ab(1), tc.monoid_ab(2), tc.monoid_ab(3)
    unit_ab = tensor(eta, tc.b.unit)

    r = AxiomReport("twisted-coaction")
    r.entries.append(equation("gamma-mult", compose(gamma, mu), bullet(gamma, gamma, ab), "γμ = γ•γ"))
    r.entries.append(equation("gamma-unit", compose(gamma, eta), unit_ab, "γη = η⊗η"))
    r.entries.append(equation("counitality", compose(tensor(ia, eps), gamma), ia, "(1⊗ε)γ = 1"))
    r.entries.append(
        equation(
            "tau-coassoc",
            bullet(tau, compose(tensor(gamma, ib), gamma), abb),
            bullet(compose(tensor(ia, delta), gamma), tau, abb),
            "τ•((γ⊗1)γ) = ((1⊗δ)γ)•τ",
        )
    )
    r.entries.append(
        equation(
            "2-cocyclicity",
            bullet(compose(whisker(a, delta, b), tau), tensor(tau, tc.b.unit), abbb),
            bullet(compose(whisker(a + b, delta), tau), compose(tensor(gamma, ib, ib), tau), abbb),
            "((1⊗δ⊗1)τ)•(τ⊗η) = ((1⊗1⊗δ)τ)•((γ⊗1⊗1)τ)",
        )
    )
    r.entries.append(
        equation("normality-right", compose(whisker(a + b, eps), tau), unit_ab, "(1⊗1⊗ε)τ = η⊗η")
    )
    r.entries.append(
        equation("normality-middle", compose(whisker(a, eps, b), tau), unit_ab, "(1⊗ε⊗1)τ = η⊗η")
    )
    return r


def _refuse(rep: AxiomReport, what: str):
    if not rep.passed:
        raise ValidationError(f"{what} fails: " + ", ".join(e.name for e in rep.failures), rep)


def generated_opwreath(tc: TwistedCoactionData, validate: bool = True) -> MixedOpwreathData:
    """z = (η⊗1)•γ, d = (η⊗δ)•τ, w = η∘ε on C = B."""
    if validate:
        _refuse(check_twisted_coaction(tc), "twisted coaction")
    b, f = tc.b.carrier, tc.field
    eta = tc.a.unit
    z = bullet(tensor(eta, identity(b, f)), tc.gamma, tc.monoid_ab(1))
    d = bullet(tensor(eta, tc.b.comul), tc.tau, tc.monoid_ab(2))
    w = compose(eta, tc.b.counit)
    return MixedOpwreathData(tc.a, b, d, w, z)


def verify_convolution_lemma(tc: TwistedCoactionData) -> AxiomReport:
    b, f = tc.b.carrier, tc.field
    bb = tensor_monoid(tc.b.monoid, tc.b.monoid)
    eta_a = tc.a.unit
    delta, eta_b = tc.b.comul, tc.b.unit
    ia = identity(tc.a.carrier, f)
    mo = generated_opwreath(tc, validate=False)
    abb = tc.monoid_ab(2)
    r = AxiomReport("convolution-lemma")
    r.entries.append(equation("item-i", bullet(delta, delta, bb), compose(delta, tc.b.mul), "δ•δ = δμ"))
    r.entries.append(
        equation(
            "item-ii",
            bullet(tensor(ia, delta), tc.tau, abb),
            bullet(tensor(ia, eta_b, eta_b), mo.d, abb),
            "(1⊗δ)•τ = (1⊗η⊗η)•d",
        )
    )
    r.entries.append(
        equation(
            "item-iii",
            bullet(tensor(eta_a, delta), compose(tensor(ia, delta), tc.gamma), abb),
            compose(tensor(ia, delta), mo.z),
            "(η⊗δ)•((1⊗δ)γ) = (1⊗δ)z",
        )
    )
    return r


def _mu3(m: MonoidObj) -> Mor:
    return compose(m.mul, tensor(m.mul, identity(m.carrier, m.field)))


def check_monoidal_twisted_coaction(mtc: MonoidalTwistedCoactionData) -> AxiomReport:
    tc = mtc.base
    a, b, f = tc.a.carrier, tc.b.carrier, tc.field
    mu_a, eta_a = tc.a.mul, tc.a.unit
    mu_b, delta, eps = tc.b.mul, tc.b.comul, tc.b.counit
    gamma, tau, dd = tc.gamma, tc.tau, mtc.dd
    ia, ib = identity(a, f), identity(b, f)
    bba = braid(b, a, f)

    r = AxiomReport("monoidal-twisted-coaction")
    r.entries.append(
        equation("A-commutative", compose(mu_a, braid(a, a, f)), mu_a, "μ∘c = μ")
    )

    # 1: 𝔡 against the coaction on products
    gg = compose(whisker(I, mu_a, b + b), whisker(a, bba, b), tensor(gamma, gamma))
    lhs1 = bullet(dd, gg, tc.monoid_ab(2))
    rhs1 = compose(
        whisker(I, mu_a, b + b),
        tensor(ia, dd),
        tensor(ia, mu_b),
        tensor(bba, ib),
        tensor(ib, gamma),
        tensor(ib, mu_a),
    )
    r.entries.append(equation("montwcoact1", lhs1, rhs1, "𝔡 compatible with γ and the products"))

    # 2: coassociativity of 𝔡 up to μ
    mu_bbb = whisker(I, mu_a, b + b + b)
    lhs2 = compose(mu_bbb, whisker(a, dd, b), dd)
    rhs2 = compose(mu_bbb, whisker(a, bba, b + b), whisker(a + b, dd), dd)
    r.entries.append(equation("montwcoact2", lhs2, rhs2, "(𝔡⊗1)𝔡 = (1⊗𝔡)𝔡 up to μ"))

    # 3: counit laws
    eta_b1 = tensor(eta_a, ib)
    r.entries.append(
        equation("montwcoact3-left", compose(whisker(a + b, eps), dd), eta_b1, "(1⊗1⊗ε)𝔡 = η⊗1")
    )
    r.entries.append(
        equation("montwcoact3-right", compose(whisker(a, eps, b), dd), eta_b1, "(1⊗ε⊗1)𝔡 = η⊗1")
    )

    # 4: 𝔡 against δ and τ
    x = compose(tensor(ia, delta, delta), dd)
    y = compose(whisker(I, mu_a, b + b + b + b), whisker(a, braid(b + b, a, f), b + b), tensor(tau, tau))
    lhs4 = bullet(x, y, tc.monoid_ab(4))
    blocks = [a, b, b, b, b]
    rhs4 = compose(
        shuffle(blocks, [0, 1, 3, 2, 4], f),
        whisker(I, _mu3(tc.a), b + b + b + b),
        whisker(a + a, dd, b + b),
        whisker(a + a, mu_b, b + b),
        shuffle([a, b, a, b, b, b], [0, 2, 1, 3, 4, 5], f),
        whisker(a + b, gamma, b + b),
        whisker(a + b, dd),
        whisker(a, mu_b, b),
        whisker(a + b + b, mu_b),
        shuffle(blocks, [0, 3, 1, 4, 2], f),
        tensor(tau, ib, ib),
        delta,
    )
    r.entries.append(equation("montwcoact4", lhs4, rhs4, "𝔡 against δ and τ"))
    return r


class OpmonoidalStructure:
    """ψ and φ for the opwreath generated by a monoidal twisted coaction."""

    def __init__(self, context: MixedOpwreathData, dd: Mor, generators=None):
        self.context = context
        self.dd = dd
        self.generators = generators

    @property
    def a(self) -> Word:
        return self.context.a

    @property
    def b(self) -> Word:
        return self.context.c

    @property
    def field(self):
        return self.context.field

    def psi(self, x, x2) -> Mor:
        """``B⊗X⊗X' -> A⊗B⊗X⊗B⊗X'``."""
        x, x2 = as_word(x), as_word(x2)
        b = self.b
        return compose(whisker(self.a + b, braid(b, x, self.field), x2), whisker(I, self.dd, x + x2))

    def phi(self, x, x2) -> Mor:
        """``A⊗X⊗A⊗X' -> A⊗X⊗X'``."""
        x, x2 = as_word(x), as_word(x2)
        a = self.a
        return compose(whisker(I, self.context.monoid.mul, x + x2), whisker(a, braid(x, a, self.field), x2))

    def phi0(self) -> Mor:
        return self.context.monoid.unit

    def psi0(self) -> Mor:
        return self.context.w


def build_opmonoidal(mtc: MonoidalTwistedCoactionData, validate: bool = True) -> OpmonoidalStructure:
    if validate:
        _refuse(check_twisted_coaction(mtc.base), "twisted coaction")
        _refuse(check_monoidal_twisted_coaction(mtc), "monoidal twisted coaction")
    return OpmonoidalStructure(generated_opwreath(mtc.base, validate=False), mtc.dd)


def default_generators(os: OpmonoidalStructure) -> list[Word]:
    seen = [I]
    for g in list(os.a) + list(os.b):
        w = Word([g])
        if w not in seen:
            seen.append(w)
    return seen


def _label(*ws) -> str:
    return "(" + ", ".join(str(w) for w in ws) + ")"


def check_opmonoidal(os: OpmonoidalStructure, gens=None) -> AxiomReport:
    gens = [as_word(g) for g in (gens if gens is not None else os.generators or default_generators(os))]
    mo, f = os.context, os.field
    a, c = os.a, os.b
    mu, eta, d, w, z = mo.monoid.mul, mo.monoid.unit, mo.d, mo.w, mo.z
    ia, ic = identity(a, f), identity(c, f)
    psi, phi = os.psi, os.phi

    def mu_on(rest):
        return whisker(I, mu, rest)

    def eta_on(rest):
        return whisker(I, eta, rest)

    def gpsi1(case):
        x, x2, y, y2 = case
        p = psi(x, x2)
        right_fixed = compose(whisker(a, phi(c + y, c + y2)), whisker(a, tensor(whisker(I, z, y), whisker(I, z, y2))))
        left_fixed = (whisker(a, psi(y, y2)), whisker(I, z, y + y2), whisker(c, phi(y, y2)))
        mu_out = mu_on(c + y + c + y2)
        for fm in matrix_units(x, a + y, f):
            for fm2 in matrix_units(x2, a + y2, f):
                lhs = compose(mu_out, *left_fixed, tensor(ic, fm, fm2))
                rhs = compose(mu_out, right_fixed, whisker(a, tensor(ic, fm, ic, fm2)), p)
                e = equation("Gpsi1", lhs, rhs)
                if not e.passed:
                    return e.witness, _label(x, x2, y, y2)
        return None

    r = AxiomReport("opmonoidal")
    quads = list(itertools.product(gens, repeat=4))
    first = next((res for res in parallel_map(gpsi1, quads) if res is not None), None)
    desc1 = "naturality of ψ"
    if first is None:
        r.entries.append(AxiomEntry("Gpsi1", True, desc1))
    else:
        wt, where = first
        r.entries.append(AxiomEntry("Gpsi1", False, desc1, Witness(wt.index, wt.left, wt.right, wt.basis, where)))

    def gpsi2():
        for x, x2, x3 in itertools.product(gens, repeat=3):
            out = c + x + c + x2 + c + x3
            right = compose(
                mu_on(out),
                whisker(a, phi(c + x + c + x2, c + x3)),
                whisker(a, tensor(psi(x, x2), eta_on(c + x3))),
                psi(x + x2, x3),
            )
            left = compose(
                mu_on(out),
                whisker(a, phi(c + x, c + x2 + c + x3)),
                whisker(a, tensor(eta_on(c + x), psi(x2, x3))),
                psi(x, x2 + x3),
            )
            yield _label(x, x2, x3), left, right

    def gpsi3():
        for x in gens:
            lhs = compose(mu_on(c + x), whisker(a, phi(c + x, I)), whisker(a, tensor(eta_on(c + x), w)), psi(x, I))
            yield _label(x), lhs, eta_on(c + x)

    def gpsi4():
        for x in gens:
            lhs = compose(mu_on(c + x), whisker(a, phi(I, c + x)), whisker(a, tensor(w, eta_on(c + x))), psi(I, x))
            yield _label(x), lhs, eta_on(c + x)

    def gpsi5():
        for x, x2 in itertools.product(gens, repeat=2):
            ccx, ccx2 = c + c + x, c + c + x2
            out = ccx + ccx2
            left = compose(
                mu_on(out),
                whisker(a, phi(ccx, ccx2)),
                whisker(a, tensor(whisker(I, d, x), whisker(I, d, x2))),
                psi(x, x2),
            )
            right = compose(
                mu_on(out),
                whisker(a, mu, out),
                whisker(a + a, psi(c + x, c + x2)),
                whisker(a, z, c + x + c + x2),
                whisker(a + c, psi(x, x2)),
                whisker(I, d, x + x2),
            )
            yield _label(x, x2), left, right

    def gpsi6():
        for x, x2 in itertools.product(gens, repeat=2):
            lhs = compose(
                mu_on(x + x2),
                whisker(a, phi(x, x2)),
                whisker(a, tensor(whisker(I, w, x), whisker(I, w, x2))),
                psi(x, x2),
            )
            yield _label(x, x2), lhs, whisker(I, w, x + x2)

    r.entries.append(equations("Gpsi2", gpsi2(), "ψ coassociative"))
    r.entries.append(equations("Gpsi3", gpsi3(), "ψ right unit"))
    r.entries.append(equations("Gpsi4", gpsi4(), "ψ left unit"))
    r.entries.append(equations("Gpsi5", gpsi5(), "d opmonoidal"))
    r.entries.append(equations("Gpsi6", gpsi6(), "w opmonoidal"))
    mu3 = compose(mu, tensor(mu, ia))
    red = compose(mu3, whisker(a + a, w), tensor(ia, z), whisker(a + c, w), d)
    r.entries.append(equation("GRedundant", red, w, "nullary part of d opmonoidal"))
    return r


def kleisli_tensor(f: KleisliMor, f2: KleisliMor, os: OpmonoidalStructure) -> KleisliMor:
    """``(μ⊗1)(1⊗φ)(1⊗f⊗f')ψ`` from X⊗X' to Y⊗Y'."""
    for h in (f, f2):
        if h.context is not os.context and h.context != os.context:
            raise ShapeError("Kleisli map does not live over the opmonoidal context")
    a = os.a
    mat = compose(
        whisker(I, os.context.monoid.mul, f.cod + f2.cod),
        whisker(a, os.phi(f.cod, f2.cod)),
        whisker(a, tensor(f.mat, f2.mat)),
        os.psi(f.dom, f2.dom),
    )
    return KleisliMor(f.dom + f2.dom, f.cod + f2.cod, mat, os.context)


def check_eckmann_hilton(os: OpmonoidalStructure) -> AxiomReport:
    mo = os.context
    units = list(matrix_units(mo.c, mo.a, mo.field))

    def cases():
        for i, u in enumerate(units):
            for j, v in enumerate(units):
                yield f"units ({i}, {j})", convolve(u, v, mo), convolve(v, u, mo)

    r = AxiomReport("eckmann-hilton")
    r.entries.append(equations("commutative", cases(), "u*v = v*u on endomorphisms of I"))
    return r


def search_monoidal_dd(base: TwistedCoactionData, max_candidates: int = 4096) -> list[Mor]:
    """Every 𝔡 over a prime field that makes ``base`` monoidal.

    Brute force over all matrices B -> A⊗B⊗B, in lexicographic order of the
    row-major entries.
    """
    f = base.field
    if f.p is None:
        raise ValueError("brute-force search needs a prime field")
    b, a = base.b.carrier, base.a.carrier
    cells = b.dim * (a + b + b).dim
    count = f.p**cells
    if count > max_candidates:
        raise SearchSpaceError(f"{count} candidates exceed the bound {max_candidates}")
    shape = ((a + b + b).dim, b.dim)
    out = []
    for values in itertools.product(range(f.p), repeat=cells):
        dd = Mor._raw(b, a + b + b, f, np.array(values, dtype=np.int64).reshape(shape))
        if check_monoidal_twisted_coaction(MonoidalTwistedCoactionData(base, dd)).passed:
            out.append(dd)
    return out
