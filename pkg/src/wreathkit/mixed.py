"""Mixed opwreaths around a monoid A and their Kleisli categories.

An opwreath on an object C is

    z: C⊗A -> A⊗C      d: C -> A⊗C⊗C      w: C -> A

A Kleisli morphism X -> Y is a matrix C⊗X -> A⊗Y.  Composition is wreath
convolution: d splits C, the first map consumes the right copy, z moves the
other copy past its A output, and the second map consumes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import ShapeError, ValidationError
from .report import AxiomEntry, AxiomReport, Witness, equation
from .structures import BimonoidObj, ComonoidObj, MonoidObj, check_bimonoid
from .tensor import _SAFE, I, Mor, Word, _downcast, _maxabs, as_word, braid, compose, identity, tensor, whisker

__all__ = [
    "MixedOpwreathData",
    "KleisliMor",
    "check_mixed_opwreath",
    "heisenberg_data",
    "heisenberg_z",
    "classical_opwreath",
    "trivial_opwreath",
    "kleisli_identity",
    "kleisli_compose",
    "kleisli_compose_reassociated",
    "check_kleisli_laws",
    "KLEISLI_LAWS",
    "convolve",
    "heisenberg_product",
    "OPWREATH_AXIOMS",
]

OPWREATH_AXIOMS = {
    "axiom1": "z vs μ",
    "axiom2": "z vs η",
    "axiom3": "w is a Kleisli 2-cell",
    "axiom4": "d is a Kleisli 2-cell",
    "axiom5": "d coassociative up to μ",
    "axiom6": "w left counit",
    "axiom7": "w right counit",
}


@dataclass(frozen=True)
class MixedOpwreathData:
    monoid: MonoidObj
    c: Word
    d: Mor
    w: Mor
    z: Mor

    def __post_init__(self):
        object.__setattr__(self, "c", as_word(self.c))
        a, c = self.monoid.carrier, self.c
        for name, m, dom, cod in (
            ("d", self.d, c, a + c + c),
            ("w", self.w, c, a),
            ("z", self.z, c + a, a + c),
        ):
            if m.dom != dom or m.cod != cod:
                raise ShapeError(f"{name} should be {dom} -> {cod}, got {m.dom} -> {m.cod}")
            if m.field != self.monoid.field:
                raise ShapeError(f"{name} is over {m.field}, monoid over {self.monoid.field}")

    @property
    def a(self) -> Word:
        return self.monoid.carrier

    @property
    def field(self):
        return self.monoid.field


def check_mixed_opwreath(mo: MixedOpwreathData) -> AxiomReport:
    a, c, f = mo.a, mo.c, mo.field
    mu, eta = mo.monoid.mul, mo.monoid.unit
    d, w, z = mo.d, mo.w, mo.z
    ia, ic = identity(a, f), identity(c, f)
    mu_cc = whisker(I, mu, c + c)
    mu_ccc = whisker(I, mu, c + c + c)
    mu_c = whisker(I, mu, c)
    eta_c = tensor(eta, ic)

    sides = {
        "axiom1": (
            compose(z, tensor(ic, mu)),
            compose(mu_c, tensor(ia, z), tensor(z, ia)),
        ),
        "axiom2": (compose(z, tensor(ic, eta)), eta_c),
        "axiom3": (
            compose(mu, tensor(w, ia)),
            compose(mu, tensor(ia, w), z),
        ),
        "axiom4": (
            compose(mu_cc, whisker(a, z, c), whisker(a + c, z), tensor(d, ia)),
            compose(mu_cc, tensor(ia, d), z),
        ),
        "axiom5": (
            compose(mu_ccc, whisker(a, d, c), d),
            compose(mu_ccc, whisker(a, z, c + c), whisker(a + c, d), d),
        ),
        "axiom6": (compose(mu_c, whisker(a, w, c), d), eta_c),
        "axiom7": (compose(mu_c, tensor(ia, z), whisker(a + c, w), d), eta_c),
    }
    r = AxiomReport("opwreath")
    for name, (lhs, rhs) in sides.items():
        r.entries.append(equation(name, lhs, rhs, OPWREATH_AXIOMS[name]))
    return r


def heisenberg_z(b: BimonoidObj) -> Mor:
    """``g⊗h -> h₂⊗(g·h₁)``: comultiply h, move its right leg to the
    front, multiply g by the left leg."""
    x, f = b.carrier, b.field
    return compose(whisker(x, b.mul), braid(x + x, x, f), whisker(x, b.comul))


def heisenberg_data(b: BimonoidObj, validate: bool = True) -> MixedOpwreathData:
    if validate:
        rep = check_bimonoid(b)
        if not rep.passed:
            raise ValidationError("not a bimonoid: " + ", ".join(e.name for e in rep.failures), rep)
    return MixedOpwreathData(b.monoid, b.carrier, tensor(b.unit, b.comul), compose(b.unit, b.counit), heisenberg_z(b))


def classical_opwreath(c: ComonoidObj, a: MonoidObj) -> MixedOpwreathData:
    """``z`` the symmetry, ``d = η⊗δ``, ``w = η∘ε``."""
    f = a.field
    return MixedOpwreathData(
        a, c.carrier, tensor(a.unit, c.comul), compose(a.unit, c.counit), braid(c.carrier, a.carrier, f)
    )


def trivial_opwreath(a: MonoidObj) -> MixedOpwreathData:
    return MixedOpwreathData(a, I, a.unit, a.unit, identity(a.carrier, a.field))


class KleisliMor:
    """A morphism ``dom -> cod`` of the mixed Kleisli category: ``C⊗dom -> A⊗cod``."""

    __slots__ = ("dom", "cod", "mat", "context")

    def __init__(self, dom, cod, mat: Mor, context: MixedOpwreathData):
        dom, cod = as_word(dom), as_word(cod)
        if mat.dom != context.c + dom or mat.cod != context.a + cod:
            raise ShapeError(
                f"Kleisli map {dom} -> {cod} needs a matrix {context.c + dom} -> {context.a + cod}, "
                f"got {mat.dom} -> {mat.cod}"
            )
        self.dom, self.cod, self.mat, self.context = dom, cod, mat, context

    def __eq__(self, other):
        if not isinstance(other, KleisliMor):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.mat == other.mat

    __hash__ = None

    def __repr__(self):
        return f"KleisliMor({self.dom} -> {self.cod})"


def _same_context(f: KleisliMor, g: KleisliMor):
    if f.context is not g.context and f.context != g.context:
        raise ShapeError("Kleisli maps live over different opwreaths")


def kleisli_identity(x, mo: MixedOpwreathData) -> KleisliMor:
    x = as_word(x)
    return KleisliMor(x, x, whisker(I, mo.w, x), mo)


def _tdot(x, y, axes, p):
    n = 1
    for ax in axes[0]:
        n *= x.shape[ax]
    if x.dtype == np.int64 and y.dtype == np.int64 and n * _maxabs(x) * _maxabs(y) < _SAFE:
        r = np.tensordot(x, y, axes)
    else:
        r = np.tensordot(x.astype(object), y.astype(object), axes)
    if p is not None:
        r = r % p
    return _downcast(r)


def _structure(mo: MixedOpwreathData):
    na, nc = mo.a.dim, mo.c.dim
    d = mo.d._a.reshape(na, nc, nc, nc)
    z = mo.z._a.reshape(na, nc, nc, na)
    mu = mo.monoid.mul._a.reshape(na, na, na)
    return d, z, mu, mo.d._d * mo.z._d * mo.monoid.mul._d ** 2


def _convolve_batch(mo: MixedOpwreathData, fs: np.ndarray, gs: np.ndarray) -> np.ndarray:
    """All composites ``g ∘ f`` of two stacks of Kleisli matrices.

    ``fs`` has axes (batch, A, Y, C, X) and ``gs`` (batch, A, W, C, Y); the
    result has axes (f batch, g batch, A, W, C, X).  Entries are numerators
    over the product of the structure denominators and those of the stacks.
    """
    d, z, mu, _ = _structure(mo)
    p = mo.field.p
    t = _tdot(d, fs, ([2], [3]), p)           # i s c | p k y x
    t = _tdot(z, t, ([2, 3], [1, 4]), p)      # l u | i c p y x
    t = _tdot(mu, t, ([1, 2], [2, 0]), p)     # b | u c p y x
    t = _tdot(t, gs, ([1, 4], [3, 4]), p)     # b c p x | q m w
    t = _tdot(mu, t, ([1, 2], [0, 5]), p)     # a | c p x q w
    return t.transpose(2, 4, 0, 5, 1, 3)


def _stack(m: Mor, na: int, nc: int) -> np.ndarray:
    return m._a.reshape(1, na, m.shape[0] // na, nc, m.shape[1] // nc)


def kleisli_compose(f: KleisliMor, g: KleisliMor) -> KleisliMor:
    """``g ∘ f`` (f first) by wreath convolution."""
    _same_context(f, g)
    if f.cod != g.dom:
        raise ShapeError(f"cannot compose: {f.dom} -> {f.cod} then {g.dom} -> {g.cod}")
    mo = f.context
    na, nc = mo.a.dim, mo.c.dim
    t = _convolve_batch(mo, _stack(f.mat, na, nc), _stack(g.mat, na, nc))
    den = _structure(mo)[3] * f.mat._d * g.mat._d
    arr = t.reshape(na * g.cod.dim, nc * f.dom.dim)
    return KleisliMor(f.dom, g.cod, Mor._raw(mo.c + f.dom, mo.a + g.cod, mo.field, arr, den), mo)


def _units(na, ny, nc, nx):
    n = na * ny * nc * nx
    return np.eye(n, dtype=np.int64).reshape(n, na, ny, nc, nx)


def _unit_label(k: int, rows: int, cols: int) -> str:
    return f"E[{k // cols},{k % cols}] ({rows}x{cols})"


def _compare(name, desc, lhs, rhs, sizes, where, field, den):
    """Entry comparing two stacks whose leading axes index matrix units."""
    if field.p is not None:
        lhs, rhs = lhs % field.p, rhs % field.p
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    pos = tuple(int(i) for i in bad[0])
    k = len(sizes)
    units = ", ".join(_unit_label(u, r, c) for u, (r, c) in zip(pos[:k], sizes))
    w = Witness(pos, field.scalar(Fraction(int(lhs[pos]), den)), field.scalar(Fraction(int(rhs[pos]), den)), None, f"{where}; units {units}")
    return AxiomEntry(name, False, desc, w)


KLEISLI_LAWS = {
    "associativity": "h∘(g∘f) = (h∘g)∘f",
    "left-identity": "id∘f = f",
    "right-identity": "f∘id = f",
}


def check_kleisli_laws(mo: MixedOpwreathData, dims=(1, 2)) -> AxiomReport:
    """Category laws of the Kleisli category on every triple of matrix units.

    Objects range over single generators of the given dimensions.  Both
    bracketings are trilinear, so agreement on units is agreement everywhere.
    """
    na, nc, fld = mo.a.dim, mo.c.dim, mo.field
    den0 = _structure(mo)[3]
    w = mo.w._a
    found = {}

    def note(e):
        if e is not None and e.name not in found:
            found[e.name] = e

    for nx, ny in product(dims, repeat=2):
        where = f"X={nx} Y={ny}"
        fs = _units(na, ny, nc, nx)
        size = [(na * ny, nc * nx)]
        idx = np.eye(nx, dtype=np.int64)
        idy = np.eye(ny, dtype=np.int64)
        id_x = np.einsum("ac,xz->axcz", w, idx).reshape(1, na, nx, nc, nx)
        id_y = np.einsum("ac,yz->aycz", w, idy).reshape(1, na, ny, nc, ny)
        scale = den0 * mo.w._d
        left = _convolve_batch(mo, id_x, fs)[0]
        note(_compare("left-identity", KLEISLI_LAWS["left-identity"], left, fs * scale, size, where, fld, scale))
        right = _convolve_batch(mo, fs, id_y)[:, 0]
        note(_compare("right-identity", KLEISLI_LAWS["right-identity"], right, fs * scale, size, where, fld, scale))
    for nx, ny, nz, nt in product(dims, repeat=4):
        if "associativity" in found:
            break
        fs, gs, hs = _units(na, ny, nc, nx), _units(na, nz, nc, ny), _units(na, nt, nc, nz)
        pf, pg, ph = len(fs), len(gs), len(hs)
        gf = _convolve_batch(mo, fs, gs).reshape(pf * pg, na, nz, nc, nx)
        lhs = _convolve_batch(mo, gf, hs).reshape(pf, pg, ph, na, nt, nc, nx)
        hg = _convolve_batch(mo, gs, hs).reshape(pg * ph, na, nt, nc, ny)
        rhs = _convolve_batch(mo, fs, hg).reshape(pf, pg, ph, na, nt, nc, nx)
        sizes = [(na * ny, nc * nx), (na * nz, nc * ny), (na * nt, nc * nz)]
        note(_compare("associativity", KLEISLI_LAWS["associativity"], lhs, rhs, sizes, f"X={nx} Y={ny} Z={nz} T={nt}", fld, den0 * den0))
    r = AxiomReport("kleisli")
    for name, desc in KLEISLI_LAWS.items():
        r.entries.append(found.get(name, AxiomEntry(name, True, desc)))
    return r


def kleisli_compose_reassociated(f: KleisliMor, g: KleisliMor) -> KleisliMor:
    """Same composite as :func:`kleisli_compose`, evaluated independently.

    The ternary product is bracketed on the right, the two outer
    multiplications are done one at a time as soon as their inputs exist, and
    the chain of matrices is multiplied from the output end.
    """
    _same_context(f, g)
    if f.cod != g.dom:
        raise ShapeError(f"cannot compose: {f.dom} -> {f.cod} then {g.dom} -> {g.cod}")
    mo = f.context
    a, c = mo.a, mo.c
    mu = mo.monoid.mul
    y, z_ = f.cod, g.cod
    # A⊗A⊗(A⊗Z) -> A⊗Z, multiplying the last two A first
    out = compose(whisker(I, mu, z_), whisker(a, mu, z_))
    out = compose(out, whisker(a + a, g.mat))
    out = compose(out, whisker(a, mo.z, y))
    out = compose(out, whisker(a + c, f.mat))
    out = compose(out, whisker(I, mo.d, f.dom))
    return KleisliMor(f.dom, g.cod, out, mo)


def convolve(u: Mor, v: Mor, mo: MixedOpwreathData) -> Mor:
    """Kleisli composite of ``u`` then ``v`` as endomorphisms of I."""
    for h in (u, v):
        if h.dom != mo.c or h.cod != mo.a:
            raise ShapeError(f"convolution needs {mo.c} -> {mo.a}, got {h.dom} -> {h.cod}")
    return kleisli_compose(KleisliMor(I, I, u, mo), KleisliMor(I, I, v, mo)).mat


def heisenberg_product(f: Mor, g: Mor, b: BimonoidObj) -> Mor:
    return convolve(f, g, heisenberg_data(b))
