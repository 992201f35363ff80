import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import eye, kron, mat, mm, perm
from wreathkit import GF, QQ, Field, Gen, I, Mor, Word, braid, compose, identity, permutation, shuffle, tensor, whisker
from wreathkit.errors import ShapeError
from wreathkit.tensor import basis_vector, matrix_units, random_mor

A, B, C = Gen("A", 2), Gen("B", 3), Gen("C", 2)


def w(*gs):
    return Word(gs)


# exact scalars

def test_rational_canonical_form():
    assert QQ.scalar("-6/4") == Fraction(-3, 2)
    assert QQ.scalar("−3/4") == Fraction(-3, 4)
    assert QQ.format(Fraction(4, 2)) == "2"
    assert QQ.format("-6/8") == "-3/4"


def test_residues_in_range():
    f = GF(7)
    assert f.scalar(-1) == 6
    assert f.scalar("1/2") == 4
    assert f.format(15) == 1
    with pytest.raises(ZeroDivisionError):
        f.scalar("1/7")


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        Field(6)


def test_word_dims():
    assert I.dim == 1
    assert w(A, B).dim == 6
    assert w(A) + w(B) == w(A, B)
    assert w(A, B).unravel(4) == (1, 1)


# identity, compose, tensor, braid

def test_identity_shapes():
    assert mat(identity(I)) == [[1]]
    assert mat(identity(A)) == eye(2)
    assert mat(identity(w(A, B))) == eye(6)


def test_compose_by_hand():
    f = Mor(A, A, [[1, 1], [1, 0]])
    g = Mor(A, A, [[1, 2], [0, 1]])
    assert mat(compose(g, f)) == [[3, 1], [1, 0]]
    assert compose(identity(A), f) == f


def test_compose_rejects_mismatch():
    with pytest.raises(ShapeError):
        compose(identity(A), identity(B))


def test_shape_error_on_bad_matrix():
    with pytest.raises(ShapeError):
        Mor(A, A, [[1, 2, 3], [4, 5, 6]])


def test_tensor_row_column():
    row = Mor(A, I, [["1/2", 3]])
    col = Mor(I, A, [[5], [-7]])
    assert mat(tensor(row, col)) == [[Fraction(5, 2), 15], [Fraction(-7, 2), -21]]
    assert tensor(identity(A), identity(B)) == identity(w(A, B))
    assert tensor(row, identity(I)) == row


def test_braid_involution_and_unit():
    assert compose(braid(A, A), braid(A, A)) == identity(w(A, A))
    assert braid(I, B) == identity(B)
    m = mat(braid(A, B))
    for i in range(2):
        for j in range(3):
            assert m[j * 2 + i][i * 3 + j] == 1


def test_hexagon():
    lhs = braid(w(A, B), C)
    rhs = compose(whisker(I, braid(A, C), B), whisker(A, braid(B, C)))
    assert lhs == rhs


def test_permutation_matches_oracle():
    x = w(A, B, C)
    for order in ([2, 0, 1], [1, 2, 0], [0, 2, 1]):
        assert mat(permutation(x, order)) == perm(x.dims, order)


def test_shuffle_with_empty_blocks():
    s = shuffle([w(A), I, w(B)], [2, 1, 0])
    assert s == braid(A, B)


def test_basis_and_units():
    assert mat(basis_vector(B, 2)) == [[0], [0], [1]]
    assert len(list(matrix_units(A, B))) == 6


def test_large_entries_stay_exact():
    big = 2**80
    f = Mor(A, A, [[big, 1], [0, big]])
    g = compose(f, f)
    assert g.entry(0, 0) == big * big
    assert g.entry(0, 1) == 2 * big


def test_rational_arithmetic():
    f = Mor(A, A, [["1/3", 0], [0, "1/6"]])
    assert (f + f).entry(0, 0) == Fraction(2, 3)
    assert (3 * f).entry(1, 1) == Fraction(1, 2)
    assert (f - f).is_zero()


# properties against the list-of-Fractions oracle

fields = st.sampled_from([QQ, GF(2), GF(5), GF(101)])
dims = st.integers(1, 3)


@settings(max_examples=60, deadline=None)
@given(fields, dims, dims, dims, st.integers(0, 10**6))
def test_compose_matches_oracle(f, n, k, m, seed):
    rng = random.Random(seed)
    x, y, z = Gen("X", n), Gen("Y", k), Gen("Z", m)
    a, b = random_mor(x, y, f, rng), random_mor(y, z, f, rng)
    assert mat(compose(b, a)) == mm(mat(b), mat(a), f.p)


@settings(max_examples=60, deadline=None)
@given(fields, dims, dims, dims, dims, st.integers(0, 10**6))
def test_tensor_matches_oracle(f, n, k, m, q, seed):
    rng = random.Random(seed)
    a = random_mor(Gen("X", n), Gen("Y", k), f, rng)
    b = random_mor(Gen("Z", m), Gen("U", q), f, rng)
    assert mat(tensor(a, b)) == kron(mat(a), mat(b), f.p)


@settings(max_examples=40, deadline=None)
@given(fields, dims, dims, dims, dims, st.integers(0, 10**6))
def test_interchange_law(f, n, k, m, q, seed):
    rng = random.Random(seed)
    x, y, z = Gen("X", n), Gen("Y", k), Gen("Z", m)
    u, v, t = Gen("U", q), Gen("V", n), Gen("T", k)
    f1, g1 = random_mor(x, y, f, rng), random_mor(y, z, f, rng)
    f2, g2 = random_mor(u, v, f, rng), random_mor(v, t, f, rng)
    assert compose(tensor(g1, g2), tensor(f1, f2)) == tensor(compose(g1, f1), compose(g2, f2))


@settings(max_examples=40, deadline=None)
@given(fields, dims, dims, dims, dims, st.integers(0, 10**6))
def test_braid_natural(f, n, k, m, q, seed):
    rng = random.Random(seed)
    a = random_mor(Gen("X", n), Gen("Y", k), f, rng)
    b = random_mor(Gen("Z", m), Gen("U", q), f, rng)
    lhs = compose(braid(a.cod, b.cod, f), tensor(a, b))
    rhs = compose(tensor(b, a), braid(a.dom, b.dom, f))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(max_denominator=50), min_size=4, max_size=4))
def test_rational_entries_roundtrip(vals):
    m = Mor(A, A, [vals[:2], vals[2:]])
    assert [x for row in m.tolist() for x in row] == vals
