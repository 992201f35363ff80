import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import dense, kleisli_sum, mat, red
from wreathkit import (
    GF,
    QQ,
    FinMonoid,
    Gen,
    I,
    KleisliMor,
    Mor,
    Word,
    check_mixed_opwreath,
    classical_convolution,
    classical_opwreath,
    compose,
    convolve,
    heisenberg_data,
    heisenberg_product,
    identity,
    kleisli_compose,
    kleisli_compose_reassociated,
    kleisli_identity,
    linearize,
    trivial_opwreath,
)
from wreathkit.errors import ShapeError, ValidationError
from wreathkit.mixed import check_kleisli_laws, heisenberg_z
from wreathkit.structures import BimonoidObj, ComonoidObj
from wreathkit.tensor import basis_vector, function_matrix, matrix_units, random_mor

AXIOMS = [f"axiom{i}" for i in range(1, 8)]


def heis_oracle(u, v, fm, p=None):
    """(u*v)(c) = Σ u[a, c] v[b, c·a] ab on the group algebra of ``fm``."""
    n = len(fm)
    t = fm.table
    out = [[0] * n for _ in range(n)]
    for c in range(n):
        for a in range(n):
            for b in range(n):
                out[t[a][b]][c] += u.entry(a, c) * v.entry(b, t[c][a])
    return [[red(x, p) for x in row] for row in out]


# axioms

def test_trivial_and_heisenberg_pass():
    for fm in (FinMonoid.cyclic(2), FinMonoid.cyclic(3), FinMonoid.symmetric3()):
        k = linearize(fm, QQ, "H")
        r = check_mixed_opwreath(heisenberg_data(k))
        assert r.names == AXIOMS and r.passed
        assert check_mixed_opwreath(trivial_opwreath(k.monoid)).passed


def test_classical_opwreath_passes():
    c = linearize(FinMonoid.cyclic(2), QQ, "C")
    a = linearize(FinMonoid.symmetric3(), QQ, "A")
    assert check_mixed_opwreath(classical_opwreath(c.comonoid, a.monoid)).passed


def test_broken_w_has_witness():
    k = linearize(FinMonoid.cyclic(2), QQ, "H")
    mo = heisenberg_data(k)
    bad = type(mo)(mo.monoid, mo.c, mo.d, Mor(mo.c, mo.a, [[1, 1], [1, 0]]), mo.z)
    r = check_mixed_opwreath(bad)
    assert not r.passed
    assert all(e.witness is not None for e in r.failures)


def test_heisenberg_refuses_non_bimonoid():
    k = linearize(FinMonoid.cyclic(2), QQ, "H")
    bad = BimonoidObj(k.monoid, ComonoidObj(k.carrier, k.comul, Mor(k.carrier, I, [[0, 0]])))
    with pytest.raises(ValidationError):
        heisenberg_data(bad)


# the Heisenberg z

@pytest.mark.parametrize("fm", [FinMonoid.cyclic(2), FinMonoid.cyclic(3), FinMonoid.symmetric3()])
def test_heisenberg_z_on_grouplikes(fm):
    # z(g⊗h) = h⊗(g·h)
    k = linearize(fm, QQ, "H")
    z = heisenberg_z(k)
    n = len(fm)
    for g in range(n):
        for h in range(n):
            col = z.column(g * n + h)
            assert col == [int(r == h * n + fm.table[g][h]) for r in range(n * n)]


def test_heisenberg_w_is_unit_on_grouplikes():
    k = linearize(FinMonoid.cyclic(3), QQ, "H")
    w = heisenberg_data(k).w
    for g in range(3):
        assert compose(w, basis_vector(k.carrier, g)) == k.unit


# Kleisli composition

def test_identity_at_unit_object_is_w():
    mo = heisenberg_data(linearize(FinMonoid.cyclic(2), QQ, "H"))
    assert kleisli_identity(I, mo).mat == mo.w


def test_identity_laws_random():
    rng = random.Random(0)
    mo = heisenberg_data(linearize(FinMonoid.cyclic(2), QQ, "H"))
    x, y = Word([Gen("X", 2)]), Word([Gen("Y", 3)])
    for _ in range(10):
        f = KleisliMor(x, y, random_mor(mo.c + x, mo.a + y, QQ, rng), mo)
        assert kleisli_compose(kleisli_identity(x, mo), f) == f
        assert kleisli_compose(f, kleisli_identity(y, mo)) == f


def test_compose_rejects_mismatched_objects():
    mo = heisenberg_data(linearize(FinMonoid.cyclic(2), QQ, "H"))
    x = Word([Gen("X", 2)])
    f = kleisli_identity(x, mo)
    with pytest.raises(ShapeError):
        kleisli_compose(f, kleisli_identity(I, mo))
    with pytest.raises(ShapeError):
        KleisliMor(x, x, identity(x), mo)


def test_unit_objects_give_convolution():
    rng = random.Random(1)
    mo = heisenberg_data(linearize(FinMonoid.cyclic(3), QQ, "H"))
    u, v = (random_mor(mo.c, mo.a, QQ, rng) for _ in range(2))
    assert kleisli_compose(KleisliMor(I, I, u, mo), KleisliMor(I, I, v, mo)).mat == convolve(u, v, mo)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 2), st.integers(1, 2), st.integers(1, 2), st.integers(0, 10**6))
def test_associativity_f3(n, dx, dy, dz, seed):
    f3 = GF(3)
    rng = random.Random(seed)
    mo = heisenberg_data(linearize(FinMonoid.cyclic(n), f3, "H"))
    x, y, z, t = (Word([Gen(s, d)]) for s, d in (("X", dx), ("Y", dy), ("Z", dz), ("T", 2)))
    f = KleisliMor(x, y, random_mor(mo.c + x, mo.a + y, f3, rng), mo)
    g = KleisliMor(y, z, random_mor(mo.c + y, mo.a + z, f3, rng), mo)
    h = KleisliMor(z, t, random_mor(mo.c + z, mo.a + t, f3, rng), mo)
    assert kleisli_compose(kleisli_compose(f, g), h) == kleisli_compose(f, kleisli_compose(g, h))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["h2", "h3", "s3", "classical"]), st.sampled_from([QQ, GF(5)]), st.integers(0, 10**6))
def test_compose_matches_index_sum_and_second_pipeline(kind, fld, seed):
    rng = random.Random(seed)
    if kind == "classical":
        mo = classical_opwreath(linearize(FinMonoid.cyclic(2), fld, "C").comonoid, linearize(FinMonoid.cyclic(3), fld).monoid)
    else:
        fm = {"h2": FinMonoid.cyclic(2), "h3": FinMonoid.cyclic(3), "s3": FinMonoid.symmetric3()}[kind]
        mo = heisenberg_data(linearize(fm, fld, "H"))
    x, y, z = Word([Gen("X", 2)]), Word([Gen("Y", 1)]), Word([Gen("Z", 2)])
    f = KleisliMor(x, y, random_mor(mo.c + x, mo.a + y, fld, rng), mo)
    g = KleisliMor(y, z, random_mor(mo.c + y, mo.a + z, fld, rng), mo)
    got = kleisli_compose(f, g)
    assert got == kleisli_compose_reassociated(f, g)
    assert mat(got.mat) == dense(kleisli_sum(mo, f, g), got.mat.dom, got.mat.cod, fld.p)


# convolution

def test_w_is_convolution_unit():
    rng = random.Random(2)
    mo = heisenberg_data(linearize(FinMonoid.symmetric3(), QQ, "H"))
    v = random_mor(mo.c, mo.a, QQ, rng)
    assert convolve(mo.w, v, mo) == v
    assert convolve(v, mo.w, mo) == v


def test_degenerates_to_classical_convolution():
    c = linearize(FinMonoid.cyclic(3), QQ, "C")
    a = linearize(FinMonoid.cyclic(2), QQ, "A")
    mo = classical_opwreath(c.comonoid, a.monoid)
    for u in matrix_units(c.carrier, a.carrier):
        for v in matrix_units(c.carrier, a.carrier):
            assert convolve(u, v, mo) == classical_convolution(u, v, c.comonoid, a.monoid)


def test_heisenberg_identity_squared_on_z2():
    # (id*id)(c) = c·c·c = c in Z/2
    k = linearize(FinMonoid.cyclic(2), QQ, "H")
    i = identity(k.carrier)
    got = heisenberg_product(i, i, k)
    assert mat(got) == [[1, 0], [0, 1]]
    mo = heisenberg_data(k)
    assert got == kleisli_compose_reassociated(KleisliMor(I, I, i, mo), KleisliMor(I, I, i, mo)).mat


def test_heisenberg_identity_squared_on_z3():
    # c -> c³ = e
    k = linearize(FinMonoid.cyclic(3), QQ, "H")
    i = identity(k.carrier)
    assert mat(heisenberg_product(i, i, k)) == [[1, 1, 1], [0, 0, 0], [0, 0, 0]]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([FinMonoid.cyclic(2), FinMonoid.cyclic(3), FinMonoid.symmetric3()]), st.sampled_from([QQ, GF(7)]), st.integers(0, 10**6))
def test_heisenberg_matches_group_formula(fm, fld, seed):
    rng = random.Random(seed)
    k = linearize(fm, fld, "H")
    u, v = (random_mor(k.carrier, k.carrier, fld, rng) for _ in range(2))
    assert mat(heisenberg_product(u, v, k)) == heis_oracle(u, v, fm, fld.p)


def test_heisenberg_product_assoc_unit_on_units_z2():
    k = linearize(FinMonoid.cyclic(2), QQ, "H")
    mo = heisenberg_data(k)
    units = list(matrix_units(k.carrier, k.carrier))
    for f, g in itertools.product(units, repeat=2):
        assert heisenberg_product(f, g, k) == convolve(f, g, mo)
    for f, g, h in itertools.product(units, repeat=3):
        assert convolve(convolve(f, g, mo), h, mo) == convolve(f, convolve(g, h, mo), mo)
    for f in units:
        assert convolve(mo.w, f, mo) == f == convolve(f, mo.w, mo)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_heisenberg_bilinear(seed):
    rng = random.Random(seed)
    k = linearize(FinMonoid.cyclic(3), QQ, "H")
    f1, f2, g = (random_mor(k.carrier, k.carrier, QQ, rng) for _ in range(3))
    c = QQ.random_scalar(rng)
    lhs = heisenberg_product(c * f1 + f2, g, k)
    assert lhs == c * heisenberg_product(f1, g, k) + heisenberg_product(f2, g, k)
    rhs = heisenberg_product(g, c * f1 + f2, k)
    assert rhs == c * heisenberg_product(g, f1, k) + heisenberg_product(g, f2, k)


# exhaustive Kleisli laws

def test_kleisli_laws_hold_exhaustively():
    for fm in (FinMonoid.cyclic(2), FinMonoid.symmetric3()):
        mo = heisenberg_data(linearize(fm, QQ, "H"))
        r = check_kleisli_laws(mo, dims=(1, 2) if len(fm) < 6 else (1,))
        assert r.names == ["associativity", "left-identity", "right-identity"] and r.passed


def test_kleisli_laws_over_f5():
    c = linearize(FinMonoid.cyclic(2), GF(5), "C")
    a = linearize(FinMonoid.cyclic(3), GF(5), "A")
    assert check_kleisli_laws(classical_opwreath(c.comonoid, a.monoid)).passed


def test_kleisli_laws_catch_a_bad_w():
    k = linearize(FinMonoid.cyclic(2), QQ, "H")
    mo = heisenberg_data(k)
    bad = type(mo)(mo.monoid, mo.c, mo.d, 2 * mo.w, mo.z)
    r = check_kleisli_laws(bad, dims=(1,))
    assert not r["left-identity"].passed and not r["right-identity"].passed
    e = r["left-identity"].witness
    assert (e.left, e.right) == (2, 1) and "units" in e.where


def test_kleisli_laws_catch_the_swapped_product():
    # z(g⊗h) = h⊗(h·g) is not associative on a non-abelian group
    fm = FinMonoid.symmetric3()
    k = linearize(fm, QQ, "H")
    mo = heisenberg_data(k)
    n = len(fm)
    z = function_matrix(k.carrier + k.carrier, k.carrier + k.carrier, lambda i: (i % n) * n + fm.table[i % n][i // n])
    bad = type(mo)(mo.monoid, mo.c, mo.d, mo.w, z)
    r = check_kleisli_laws(bad, dims=(1,))
    assert not r["associativity"].passed
    assert not check_mixed_opwreath(bad)["axiom1"].passed
