"""Monoid extensions from split surjections, factor sets, and their wreaths.

A fibration is a surjective monoid morphism ``p: E -> M`` with a
unit-preserving section ``j`` such that ``(x, a) -> j(x)·a`` is a bijection
``M × A -> E`` where ``A`` is the kernel ``p⁻¹(1)``.  Such data is the same as
an extension: a twisted action ``α`` of ``M`` on ``A`` written ``a·x`` and a
factor set ``ρ: M × M -> A``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import FibrationError, SearchSpaceError, ValidationError
from .report import AxiomReport, first_failure
from .structures import FinMonoid, linearize
from .tensor import QQ, Field, Gen, I, Mor, Word, function_matrix
from .wreath import WreathData

__all__ = [
    "FibrationData",
    "ExtensionData",
    "analyze_fibration",
    "verify_extension_data",
    "reconstruct",
    "extension_to_wreath",
    "enumerate_cocycles",
    "translation_map",
    "is_isomorphism",
    "DEFAULT_MAX_CANDIDATES",
]

DEFAULT_MAX_CANDIDATES = 10**7


@dataclass(frozen=True)
class FibrationData:
    e: FinMonoid
    m: FinMonoid
    p: tuple
    j: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(v) for v in self.p))
        object.__setattr__(self, "j", tuple(int(v) for v in self.j))
        if len(self.p) != len(self.e) or any(not 0 <= v < len(self.m) for v in self.p):
            raise FibrationError("p must send each element of E to an element of M")
        if len(self.j) != len(self.m) or any(not 0 <= v < len(self.e) for v in self.j):
            raise FibrationError("j must send each element of M to an element of E")


@dataclass(frozen=True)
class ExtensionData:
    m: FinMonoid
    a: FinMonoid
    alpha: tuple  # alpha[a][x] = a·x
    rho: tuple  # rho[x][y]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(tuple(int(v) for v in r) for r in self.alpha))
        object.__setattr__(self, "rho", tuple(tuple(int(v) for v in r) for r in self.rho))
        na, nm = len(self.a), len(self.m)
        if len(self.alpha) != na or any(len(r) != nm or any(not 0 <= v < na for v in r) for r in self.alpha):
            raise ValueError(f"alpha must be an {na}x{nm} table of elements of A")
        if len(self.rho) != nm or any(len(r) != nm or any(not 0 <= v < na for v in r) for r in self.rho):
            raise ValueError(f"rho must be an {nm}x{nm} table of elements of A")

    @classmethod
    def trivial_action(cls, m: FinMonoid, a: FinMonoid, rho=None) -> "ExtensionData":
        alpha = [[x for _ in range(len(m))] for x in range(len(a))]
        if rho is None:
            rho = [[a.unit] * len(m) for _ in range(len(m))]
        return cls(m, a, alpha, rho)


def _kernel(fd: FibrationData) -> tuple[list[int], FinMonoid]:
    e, m = fd.e, fd.m
    members = [k for k in range(len(e)) if fd.p[k] == m.unit]
    pos = {k: i for i, k in enumerate(members)}
    table = [[pos[e.table[x][y]] for y in members] for x in members]
    return members, FinMonoid([e.elements[k] for k in members], table, pos[e.unit])


def analyze_fibration(fd: FibrationData) -> ExtensionData:
    e, m = fd.e, fd.m
    for name, fm in (("E", e), ("M", m)):
        bad = fm.problems()
        if bad:
            raise FibrationError(f"{name} is not a monoid: {'; '.join(bad)}")
    el, ml = e.elements, m.elements
    if fd.p[e.unit] != m.unit:
        raise FibrationError(f"p({el[e.unit]}) = {ml[fd.p[e.unit]]} is not the unit")
    for x, y in itertools.product(range(len(e)), repeat=2):
        if fd.p[e.table[x][y]] != m.table[fd.p[x]][fd.p[y]]:
            raise FibrationError(f"p is not multiplicative at ({el[x]}, {el[y]})")
    for x in range(len(m)):
        if fd.p[fd.j[x]] != x:
            raise FibrationError(f"p(j({ml[x]})) = {ml[fd.p[fd.j[x]]]} differs from {ml[x]}")
    if fd.j[m.unit] != e.unit:
        raise FibrationError(f"j({ml[m.unit]}) = {el[fd.j[m.unit]]} is not the unit")

    members, a = _kernel(fd)
    h = {}
    for x in range(len(m)):
        for i, k in enumerate(members):
            target = e.table[fd.j[x]][k]
            if target in h:
                y, i2 = h[target]
                raise FibrationError(
                    f"h is not injective: ({ml[x]}, {a.elements[i]}) and ({ml[y]}, {a.elements[i2]}) "
                    f"both give {el[target]}"
                )
            h[target] = (x, i)
    missing = [el[k] for k in range(len(e)) if k not in h]
    if missing:
        raise FibrationError(f"h is not surjective: {missing[0]} is not of the form j(x)·a")

    alpha = [[0] * len(m) for _ in members]
    for i, k in enumerate(members):
        for x in range(len(m)):
            x2, i2 = h[e.table[k][fd.j[x]]]
            alpha[i][x] = i2
    rho = [[0] * len(m) for _ in range(len(m))]
    for x in range(len(m)):
        for y in range(len(m)):
            xy, r = h[e.table[fd.j[x]][fd.j[y]]]
            assert xy == m.table[x][y]
            rho[x][y] = r
    return ExtensionData(m, a, alpha, rho)


def translation_map(fd: FibrationData, ed: ExtensionData) -> list[int]:
    """``h(x, a) = j(x)·a`` indexed by ``x * |A| + a``."""
    members = [k for k in range(len(fd.e)) if fd.p[k] == fd.m.unit]
    return [fd.e.table[fd.j[x]][members[i]] for x in range(len(ed.m)) for i in range(len(ed.a))]


def is_isomorphism(src: FinMonoid, dst: FinMonoid, f) -> bool:
    """Exhaustive check that the index map ``f`` is a monoid isomorphism."""
    return len(src) == len(dst) and sorted(f) == list(range(len(dst))) and src.preserved_by(dst, f)


def verify_extension_data(ed: ExtensionData) -> AxiomReport:
    m, a, al, rho = ed.m, ed.a, ed.alpha, ed.rho
    mt, at = m.table, a.table
    me, ae = m.elements, a.elements
    M, A = range(len(m)), range(len(a))

    def endo():
        for x in M:
            yield (ae[a.unit], me[x]), ae[al[a.unit][x]], ae[a.unit]
            for u in A:
                for v in A:
                    yield (ae[u], ae[v], me[x]), ae[al[at[u][v]][x]], ae[at[al[u][x]][al[v][x]]]

    def unital():
        for u in A:
            yield (ae[u],), ae[al[u][m.unit]], ae[u]

    def action():
        for u in A:
            for x in M:
                for y in M:
                    left = at[al[u][mt[x][y]]][rho[x][y]]
                    right = at[rho[x][y]][al[al[u][x]][y]]
                    yield (ae[u], me[x], me[y]), ae[left], ae[right]

    def factorset():
        for x in M:
            for y in M:
                for z in M:
                    left = at[rho[mt[x][y]][z]][al[rho[x][y]][z]]
                    right = at[rho[x][mt[y][z]]][rho[y][z]]
                    yield (me[x], me[y], me[z]), ae[left], ae[right]

    def normalized():
        for x in M:
            yield (me[m.unit], me[x]), ae[rho[m.unit][x]], ae[a.unit]
            yield (me[x], me[m.unit]), ae[rho[x][m.unit]], ae[a.unit]

    r = AxiomReport("extension")
    r.entries.append(first_failure("alpha-is-endomorphism", endo(), "(uv)·x = (u·x)(v·x), 1·x = 1"))
    r.entries.append(first_failure("alpha-unital", unital(), "u·1 = u"))
    r.entries.append(first_failure("rho-action", action(), "(u·xy)ρ(x,y) = ρ(x,y)((u·x)·y)"))
    r.entries.append(first_failure("factorset", factorset(), "ρ(xy,z)(ρ(x,y)·z) = ρ(x,yz)ρ(y,z)"))
    r.entries.append(first_failure("rho-normalized", normalized(), "ρ(1,x) = ρ(x,1) = 1"))
    return r


def _require(ed: ExtensionData):
    for name, fm in (("M", ed.m), ("A", ed.a)):
        bad = fm.problems()
        if bad:
            raise ValidationError(f"{name} is not a monoid: {'; '.join(bad)}")
    rep = verify_extension_data(ed)
    if not rep.passed:
        raise ValidationError("extension data fails: " + ", ".join(e.name for e in rep.failures), rep)


def reconstruct(ed: ExtensionData, validate: bool = True) -> FinMonoid:
    """Monoid on M × A with (x,a)(y,b) = (xy, ρ(x,y)(a·y)b), pairs x-major."""
    if validate:
        _require(ed)
    m, a = ed.m, ed.a
    na = len(a)
    at = a.table
    pairs = [(x, u) for x in range(len(m)) for u in range(na)]
    table = [
        [m.table[x][y] * na + at[at[ed.rho[x][y]][ed.alpha[u][y]]][v] for (y, v) in pairs]
        for (x, u) in pairs
    ]
    labels = [f"({m.elements[x]},{a.elements[u]})" for x, u in pairs]
    return FinMonoid(labels, table, m.unit * na + a.unit)


def extension_to_wreath(ed: ExtensionData, field: Field = QQ, validate: bool = True) -> WreathData:
    """Wreath around the monoid algebra of A with S spanned by M."""
    if validate:
        _require(ed)
    mon = linearize(ed.a, field, "A").monoid
    na, nm = len(ed.a), len(ed.m)
    s = Word([Gen("S", nm)])
    a = mon.carrier
    nu = function_matrix(s + s, s + a, lambda k: ed.m.table[k // nm][k % nm] * na + ed.rho[k // nm][k % nm], field)
    lam = function_matrix(a + s, s + a, lambda k: (k % nm) * na + ed.alpha[k // nm][k % nm], field)
    sigma0 = function_matrix(I, s + a, lambda _: ed.m.unit * na + ed.a.unit, field)
    return WreathData(mon, s, nu, sigma0, lam)


def enumerate_cocycles(
    m: FinMonoid, a: FinMonoid, alpha, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> list[tuple[tuple[int, ...], ...]]:
    """All normalized factor sets compatible with ``alpha``.

    Depth-first over the non-unit cells in row-major order, so the output is
    lexicographic in the table entries.  Each law is tested as soon as every
    cell it mentions is filled, which prunes without changing the result.
    """
    nm, na = len(m), len(a)
    free = [(x, y) for x in range(nm) for y in range(nm) if x != m.unit and y != m.unit]
    count = na ** len(free)
    if count > max_candidates:
        raise SearchSpaceError(f"{count} candidate factor sets exceed the bound {max_candidates}")
    alpha = [list(r) for r in alpha]
    mt, at = m.table, a.table
    order = {cell: i for i, cell in enumerate(free)}

    def stage(*cells):
        return max((order.get(c, -1) for c in cells), default=-1)

    laws = [[] for _ in range(len(free) + 1)]  # laws[k]: ready after cell k-1 is set
    for x, y, z in itertools.product(range(nm), repeat=3):
        cells = ((mt[x][y], z), (x, y), (x, mt[y][z]), (y, z))
        laws[stage(*cells) + 1].append(("f", x, y, z))
    for x, y in itertools.product(range(nm), repeat=2):
        laws[stage((x, y)) + 1].append(("a", x, y))

    rho = [[a.unit] * nm for _ in range(nm)]

    def holds(law) -> bool:
        if law[0] == "f":
            _, x, y, z = law
            return at[rho[mt[x][y]][z]][alpha[rho[x][y]][z]] == at[rho[x][mt[y][z]]][rho[y][z]]
        _, x, y = law
        r = rho[x][y]
        return all(at[alpha[u][mt[x][y]]][r] == at[r][alpha[alpha[u][x]][y]] for u in range(na))

    out = []

    def dfs(k: int):
        if not all(holds(law) for law in laws[k]):
            return
        if k == len(free):
            out.append(tuple(tuple(r) for r in rho))
            return
        x, y = free[k]
        for v in range(na):
            rho[x][y] = v
            dfs(k + 1)
        rho[x][y] = a.unit

    dfs(0)
    return out


def candidate_count(m: FinMonoid, a: FinMonoid) -> int:
    return len(a) ** ((len(m) - 1) ** 2)
