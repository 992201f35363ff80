"""Monoids, comonoids and bimonoids in the matrix category, with law checkers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .report import AxiomReport, equation
from .tensor import _SAFE, _maxabs
from .tensor import (
    QQ,
    Field,
    Gen,
    I,
    Mor,
    Word,
    as_word,
    braid,
    compose,
    counit_of,
    function_matrix,
    identity,
    tensor,
    whisker,
)

__all__ = [
    "MonoidObj",
    "ComonoidObj",
    "BimonoidObj",
    "FinMonoid",
    "check_monoid",
    "check_comonoid",
    "check_bimonoid",
    "linearize",
    "tensor_monoid",
    "bullet",
    "classical_convolution",
    "grouplike_comonoid",
    "function_bimonoid",
    "trivial_bimonoid",
    "is_commutative",
    "co_opposite",
]


def _expect(m: Mor, dom, cod, what: str):
    if m.dom != as_word(dom) or m.cod != as_word(cod):
        raise ShapeError(f"{what} should be {as_word(dom)} -> {as_word(cod)}, got {m.dom} -> {m.cod}")


class MonoidObj:
    """Monoid on ``carrier`` with multiplication ``mul`` and unit ``unit``.

    Monoids built by :func:`tensor_monoid` remember their factors, build
    ``mul`` only on first access, and let :func:`bullet` multiply factor by
    factor instead.
    """

    def __init__(self, carrier, mul: Mor | None, unit: Mor, factors: tuple = ()):
        self.carrier = as_word(carrier)
        self.unit = unit
        self.factors = tuple(factors)
        self._mul = mul
        x = self.carrier
        _expect(unit, I, x, "unit")
        if mul is None:
            if not self.factors:
                raise ValueError("a monoid needs a multiplication")
        else:
            _expect(mul, x + x, x, "multiplication")
            if mul.field != unit.field:
                raise ShapeError("multiplication and unit over different fields")

    @property
    def mul(self) -> Mor:
        if self._mul is None:
            self._mul = _product_mul(self.factors)
        return self._mul

    @property
    def field(self) -> Field:
        return self.unit.field

    def __eq__(self, other):
        if not isinstance(other, MonoidObj):
            return NotImplemented
        if self.carrier != other.carrier or self.unit != other.unit:
            return False
        if self.factors and other.factors and len(self.factors) == len(other.factors):
            if all(p == q for p, q in zip(self.factors, other.factors)):
                return True
        return self.mul == other.mul

    __hash__ = None

    def __repr__(self):
        return f"MonoidObj({self.carrier})"


@dataclass(frozen=True)
class ComonoidObj:
    carrier: Word
    comul: Mor
    counit: Mor

    def __post_init__(self):
        object.__setattr__(self, "carrier", as_word(self.carrier))
        x = self.carrier
        _expect(self.comul, x, x + x, "comultiplication")
        _expect(self.counit, x, I, "counit")
        if self.comul.field != self.counit.field:
            raise ShapeError("comultiplication and counit over different fields")

    @property
    def field(self) -> Field:
        return self.comul.field


@dataclass(frozen=True)
class BimonoidObj:
    monoid: MonoidObj
    comonoid: ComonoidObj

    def __post_init__(self):
        if self.monoid.carrier != self.comonoid.carrier:
            raise ShapeError(f"monoid on {self.monoid.carrier} but comonoid on {self.comonoid.carrier}")

    carrier = property(lambda self: self.monoid.carrier)
    mul = property(lambda self: self.monoid.mul)
    unit = property(lambda self: self.monoid.unit)
    comul = property(lambda self: self.comonoid.comul)
    counit = property(lambda self: self.comonoid.counit)
    field = property(lambda self: self.monoid.field)


class FinMonoid:
    """A finite monoid given by element labels, a product table and a unit."""

    def __init__(self, elements, table, unit: int = 0):
        self.elements = tuple(str(e) for e in elements)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.unit = int(unit)
        n = len(self.elements)
        if n < 1:
            raise ValueError("a monoid needs at least one element")
        if len(set(self.elements)) != n:
            raise ValueError("element labels must be distinct")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError(f"table must be {n}x{n}")
        if any(not 0 <= v < n for r in self.table for v in r):
            raise ValueError("table entries must be element indices")

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, FinMonoid)
            and self.elements == other.elements
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.elements, self.table, self.unit))

    def __repr__(self):
        return f"FinMonoid({list(self.elements)})"

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, label: str) -> int:
        return self.elements.index(str(label))

    def problems(self) -> list[str]:
        """Reasons the table is not a monoid (empty when it is)."""
        n, t, u = len(self), self.table, self.unit
        out = []
        if not 0 <= u < n:
            return [f"unit index {u} out of range"]
        for x in range(n):
            if t[u][x] != x or t[x][u] != x:
                out.append(f"unit {self.elements[u]} is not neutral for {self.elements[x]}")
                break
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                e = self.elements
                out.append(f"not associative at ({e[x]}, {e[y]}, {e[z]})")
                break
        return out

    def validate(self):
        bad = self.problems()
        if bad:
            raise ValueError("; ".join(bad))
        return self

    def is_commutative(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    @classmethod
    def from_function(cls, elements, op, unit):
        elements = list(elements)
        pos = {e: i for i, e in enumerate(elements)}
        table = [[pos[op(a, b)] for b in elements] for a in elements]
        return cls([_label(e) for e in elements], table, pos[unit])

    @classmethod
    def cyclic(cls, n: int) -> "FinMonoid":
        """The additive group Z/n with elements labelled 0..n-1."""
        return cls([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)], 0)

    @classmethod
    def trivial(cls) -> "FinMonoid":
        return cls(["1"], [[0]], 0)

    @classmethod
    def symmetric3(cls) -> "FinMonoid":
        """S3 as permutations of (0, 1, 2), composed right to left."""
        perms = sorted(itertools.permutations(range(3)))
        return cls.from_function(perms, lambda p, q: tuple(p[q[i]] for i in range(3)), (0, 1, 2))

    def product(self, other: "FinMonoid") -> "FinMonoid":
        """Direct product, pairs ordered with the left factor most significant."""
        n, m = len(self), len(other)
        labels = [f"({a},{b})" for a in self.elements for b in other.elements]
        table = [
            [self.table[i // m][k // m] * m + other.table[i % m][k % m] for k in range(n * m)]
            for i in range(n * m)
        ]
        return FinMonoid(labels, table, self.unit * m + other.unit)

    def preserved_by(self, other: "FinMonoid", f) -> bool:
        """Whether the index map ``f`` is a monoid morphism into ``other``."""
        n = len(self)
        if f[self.unit] != other.unit:
            return False
        return all(f[self.table[x][y]] == other.table[f[x]][f[y]] for x in range(n) for y in range(n))


def _label(e) -> str:
    if isinstance(e, tuple):
        return "".join(str(t) for t in e)
    return str(e)


def check_monoid(m: MonoidObj) -> AxiomReport:
    x, mu, eta = m.carrier, m.mul, m.unit
    one = identity(x, m.field)
    r = AxiomReport("monoid")
    r.entries.append(equation("assoc", compose(mu, tensor(mu, one)), compose(mu, tensor(one, mu)), "μ(μ⊗1) = μ(1⊗μ)"))
    r.entries.append(equation("unit-left", compose(mu, tensor(eta, one)), one, "μ(η⊗1) = 1"))
    r.entries.append(equation("unit-right", compose(mu, tensor(one, eta)), one, "μ(1⊗η) = 1"))
    return r


def check_comonoid(c: ComonoidObj) -> AxiomReport:
    x, delta, eps = c.carrier, c.comul, c.counit
    one = identity(x, c.field)
    r = AxiomReport("comonoid")
    r.entries.append(
        equation("coassoc", compose(tensor(delta, one), delta), compose(tensor(one, delta), delta), "(δ⊗1)δ = (1⊗δ)δ")
    )
    r.entries.append(equation("counit-left", compose(tensor(eps, one), delta), one, "(ε⊗1)δ = 1"))
    r.entries.append(equation("counit-right", compose(tensor(one, eps), delta), one, "(1⊗ε)δ = 1"))
    return r


def check_bimonoid(b: BimonoidObj) -> AxiomReport:
    r = AxiomReport("bimonoid")
    r.extend(check_monoid(b.monoid))
    r.extend(check_comonoid(b.comonoid))
    x, f = b.carrier, b.field
    mu, eta, delta, eps = b.mul, b.unit, b.comul, b.counit
    middle = whisker(x, braid(x, x, f), x)
    r.entries.append(
        equation(
            "comul-mul",
            compose(delta, mu),
            compose(tensor(mu, mu), middle, tensor(delta, delta)),
            "δμ = (μ⊗μ)(1⊗c⊗1)(δ⊗δ)",
        )
    )
    r.entries.append(equation("counit-mul", compose(eps, mu), tensor(eps, eps), "εμ = ε⊗ε"))
    r.entries.append(equation("comul-unit", compose(delta, eta), tensor(eta, eta), "δη = η⊗η"))
    r.entries.append(equation("counit-unit", compose(eps, eta), identity(I, f), "εη = 1"))
    return r


def _table_mul(fm: FinMonoid, x: Word, field: Field) -> Mor:
    n = len(fm)
    return function_matrix(x + x, x, lambda k: fm.table[k // n][k % n], field)


def linearize(fm: FinMonoid, field: Field = QQ, name: str = "A") -> BimonoidObj:
    """Monoid algebra of ``fm`` with grouplike comultiplication.

    The basis is the element list in declared order.
    """
    fm.validate()
    x = Word([Gen(name, len(fm))])
    unit = function_matrix(I, x, lambda _: fm.unit, field)
    return BimonoidObj(MonoidObj(x, _table_mul(fm, x, field), unit), grouplike_comonoid(x, field))


def grouplike_comonoid(x, field: Field = QQ) -> ComonoidObj:
    """Every basis vector is grouplike: ``e_i -> e_i ⊗ e_i``, counit 1."""
    x = as_word(x)
    n = x.dim
    return ComonoidObj(x, function_matrix(x, x + x, lambda i: i * n + i, field), counit_of(x, field))


def function_bimonoid(fm: FinMonoid, field: Field = QQ, name: str = "F") -> BimonoidObj:
    """Functions on a finite monoid: pointwise product, comultiplication dual
    to the monoid table.  Not cocommutative when ``fm`` is not commutative."""
    fm.validate()
    n = len(fm)
    x = Word([Gen(name, n)])
    mul = np.zeros((n, n * n), dtype=np.int64)
    for g in range(n):
        mul[g, g * n + g] = 1
    comul = np.zeros((n * n, n), dtype=np.int64)
    for h in range(n):
        for k in range(n):
            comul[h * n + k, fm.table[h][k]] = 1
    counit = np.zeros((1, n), dtype=np.int64)
    counit[0, fm.unit] = 1
    monoid = MonoidObj(x, Mor._raw(x + x, x, field, mul), Mor._raw(I, x, field, np.ones((n, 1), dtype=np.int64)))
    comonoid = ComonoidObj(x, Mor._raw(x, x + x, field, comul), Mor._raw(x, I, field, counit))
    return BimonoidObj(monoid, comonoid)


def trivial_bimonoid(field: Field = QQ) -> BimonoidObj:
    one = identity(I, field)
    return BimonoidObj(MonoidObj(I, one, one), ComonoidObj(I, one, one))


def _product_mul(factors) -> Mor:
    out = factors[0]
    for b in factors[1:]:
        x, y = out.carrier, b.carrier
        mul = compose(tensor(out.mul, b.mul), whisker(x, braid(y, x, b.field), y))
        out = MonoidObj(x + y, mul, tensor(out.unit, b.unit))
    return out.mul


def tensor_monoid(a: MonoidObj, b: MonoidObj) -> MonoidObj:
    """Monoid on ``A⊗B`` with the symmetry as distributive law:
    ``(μ_A⊗μ_B)(1⊗c_{B,A}⊗1)``."""
    if a.field != b.field:
        raise ShapeError("tensor_monoid across fields")
    factors = (a.factors or (a,)) + (b.factors or (b,))
    return MonoidObj(a.carrier + b.carrier, None, tensor(a.unit, b.unit), factors)


def bullet(u: Mor, v: Mor, m: MonoidObj) -> Mor:
    """``μ ∘ (u ⊗ v)`` for two maps into the carrier of ``m``."""
    if u.cod != m.carrier or v.cod != m.carrier:
        raise ShapeError(f"bullet needs maps into {m.carrier}, got codomains {u.cod} and {v.cod}")
    if m.factors and m._mul is None:
        return _factorwise_bullet(u, v, m)
    return compose(m.mul, tensor(u, v))


def _factorwise_bullet(u: Mor, v: Mor, m: MonoidObj) -> Mor:
    # same sum as μ(u⊗v), contracting one factor monoid at a time
    dims = [f.carrier.dim for f in m.factors]
    k = len(dims)
    nu, nv = u.dom.dim, v.dom.dim
    ua, va = u._a.reshape(dims + [nu]), v._a.reshape(dims + [nv])
    mus = [f.mul._a.reshape(d, d, d) for f, d in zip(m.factors, dims)]
    bound = _maxabs(ua) * _maxabs(va) * u.cod.dim**2
    for t in mus:
        bound *= max(1, _maxabs(t))
    if bound >= _SAFE:
        ua, va, mus = ua.astype(object), va.astype(object), [t.astype(object) for t in mus]
    # w axes: x1..xk, i, y1..yk, j
    w = np.multiply.outer(ua, va)
    for mu in mus:
        # the next x is always axis 0 and its partner y is axis k + 1; the
        # new output axis goes behind the outputs already produced
        w = np.tensordot(mu, w, axes=([1, 2], [0, k + 1]))
        w = np.moveaxis(w, 0, k - 1)
    arr = w.reshape(u.cod.dim, nu * nv)
    den = u._d * v._d
    for f in m.factors:
        den *= f.mul._d
    return Mor._raw(u.dom + v.dom, m.carrier, m.field, arr, den)


def classical_convolution(u: Mor, v: Mor, c: ComonoidObj, m: MonoidObj) -> Mor:
    """``μ ∘ (u ⊗ v) ∘ δ``."""
    for h in (u, v):
        if h.dom != c.carrier or h.cod != m.carrier:
            raise ShapeError(f"convolution needs {c.carrier} -> {m.carrier}, got {h.dom} -> {h.cod}")
    return compose(m.mul, tensor(u, v), c.comul)


def is_commutative(m: MonoidObj) -> bool:
    return compose(m.mul, braid(m.carrier, m.carrier, m.field)) == m.mul


def co_opposite(c: ComonoidObj) -> ComonoidObj:
    """Same counit, comultiplication followed by the symmetry."""
    return ComonoidObj(c.carrier, compose(braid(c.carrier, c.carrier, c.field), c.comul), c.counit)
