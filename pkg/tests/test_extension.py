import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathkit import FinMonoid, QQ
from wreathkit.errors import FibrationError, SearchSpaceError, ValidationError
from wreathkit.extension import (
    ExtensionData,
    FibrationData,
    analyze_fibration,
    candidate_count,
    enumerate_cocycles,
    extension_to_wreath,
    is_isomorphism,
    reconstruct,
    translation_map,
    verify_extension_data,
)
from wreathkit.fixtures import z4_fibration

Z2, Z3, Z4 = FinMonoid.cyclic(2), FinMonoid.cyclic(3), FinMonoid.cyclic(4)


def brute_cocycles(m, a, alpha):
    """Every rho table, filtered by the laws written out directly."""
    nm, na = len(m), len(a)
    out = []
    for flat in itertools.product(range(na), repeat=nm * nm):
        rho = [list(flat[i * nm:(i + 1) * nm]) for i in range(nm)]
        ed = ExtensionData(m, a, alpha, rho)
        if verify_extension_data(ed).passed:
            out.append(tuple(tuple(r) for r in rho))
    return out


def element_orders(fm):
    out = []
    for g in range(len(fm)):
        k, x = 1, g
        while x != fm.unit:
            x, k = fm.table[x][g], k + 1
        out.append(k)
    return sorted(out)


# analyze_fibration

def test_z4_over_z2():
    ed = analyze_fibration(z4_fibration())
    assert list(ed.a.elements) == ["0", "2"]
    assert ed.alpha == ((0, 0), (1, 1))
    assert ed.rho == ((0, 0), (0, 1))
    assert ed.a.elements[ed.rho[1][1]] == "2"


def test_identity_fibration():
    fd = FibrationData(Z3, Z3, [0, 1, 2], [0, 1, 2])
    ed = analyze_fibration(fd)
    assert len(ed.a) == 1
    assert all(v == ed.a.unit for r in ed.rho for v in r)


def test_split_product():
    e = Z2.product(Z3)
    p = [k // 3 for k in range(6)]
    j = [0, 3]
    ed = analyze_fibration(FibrationData(e, Z2, p, j))
    assert all(v == ed.a.unit for r in ed.rho for v in r)
    assert all(ed.alpha[u][x] == u for u in range(3) for x in range(2))


def test_bad_fibrations_name_elements():
    with pytest.raises(FibrationError, match="not multiplicative"):
        analyze_fibration(FibrationData(Z4, Z2, [0, 1, 1, 0], [0, 1]))
    with pytest.raises(FibrationError, match="p\\(j\\(1\\)\\)"):
        analyze_fibration(FibrationData(Z4, Z2, [0, 1, 0, 1], [0, 2]))
    with pytest.raises(FibrationError, match="not the unit"):
        analyze_fibration(FibrationData(Z4, Z2, [0, 1, 0, 1], [2, 1]))


# verify_extension_data

def test_z4_data_passes():
    r = verify_extension_data(analyze_fibration(z4_fibration()))
    assert r.passed
    assert r.names == ["alpha-is-endomorphism", "alpha-unital", "rho-action", "factorset", "rho-normalized"]


def test_unnormalized_rho_witness():
    ed = ExtensionData.trivial_action(Z2, Z2, [[0, 1], [0, 0]])
    e = verify_extension_data(ed)["rho-normalized"]
    assert not e.passed
    assert e.witness.index == ("0", "1")
    with pytest.raises(ValidationError):
        reconstruct(ed)


def test_trivial_rho_with_real_action():
    # Z/2 acting on Z/3 by inversion
    alpha = [[0, 0], [1, 2], [2, 1]]
    ed = ExtensionData(Z2, Z3, alpha, [[0, 0], [0, 0]])
    assert verify_extension_data(ed).passed
    s3 = reconstruct(ed)
    assert not s3.is_commutative()
    assert element_orders(s3) == [1, 2, 2, 2, 3, 3]


# reconstruct

def test_twisted_z2_is_z4():
    ed = ExtensionData.trivial_action(Z2, Z2, [[0, 0], [0, 1]])
    r = reconstruct(ed)
    x1 = r.elements.index("(1,0)")
    k, g = 1, x1
    while g != r.unit:
        g, k = r.table[g][x1], k + 1
    assert k == 4


def test_trivial_rho_is_direct_product():
    r = reconstruct(ExtensionData.trivial_action(Z2, Z3))
    assert r.table == Z2.product(Z3).table


def test_round_trip_is_isomorphism():
    fd = z4_fibration()
    ed = analyze_fibration(fd)
    h = translation_map(fd, ed)
    assert is_isomorphism(reconstruct(ed), fd.e, h)
    # h(x, a) = j(x) + a
    assert h == [0, 2, 1, 3]


def test_extension_to_wreath_shapes():
    wd = extension_to_wreath(analyze_fibration(z4_fibration()), QQ)
    assert wd.s.dim == 2 and wd.monoid.carrier.dim == 2


# enumerate_cocycles

def test_trivial_m_has_one_empty_cocycle():
    t = FinMonoid.trivial()
    assert enumerate_cocycles(t, Z3, [[0], [1], [2]]) == [((0,),)]


def test_z2_over_z2_two_cocycles():
    ed = ExtensionData.trivial_action(Z2, Z2)
    found = enumerate_cocycles(Z2, Z2, ed.alpha)
    assert found == [((0, 0), (0, 0)), ((0, 0), (0, 1))]
    orders = [element_orders(reconstruct(ExtensionData(Z2, Z2, ed.alpha, rho))) for rho in found]
    assert orders == [[1, 2, 2, 2], [1, 2, 4, 4]]


def test_z3_over_z2_matches_brute_force():
    ed = ExtensionData.trivial_action(Z2, Z3)
    found = enumerate_cocycles(Z2, Z3, ed.alpha)
    assert found == brute_cocycles(Z2, Z3, ed.alpha)
    assert len(found) == 3


def test_search_bound():
    ed = ExtensionData.trivial_action(Z4, Z3)
    assert candidate_count(Z4, Z3) == 3**9
    with pytest.raises(SearchSpaceError):
        enumerate_cocycles(Z4, Z3, ed.alpha, max_candidates=100)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([Z2, Z3, FinMonoid.from_function([0, 1], lambda a, b: a * b, 1)]), st.sampled_from([Z2, Z3]))
def test_pruned_search_equals_brute_force(m, a):
    alpha = [[u] * len(m) for u in range(len(a))]
    assert enumerate_cocycles(m, a, alpha) == brute_cocycles(m, a, alpha)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([Z2, Z3]), st.sampled_from([Z2, Z3]))
def test_every_cocycle_reconstructs_a_monoid(m, a):
    alpha = [[u] * len(m) for u in range(len(a))]
    for rho in enumerate_cocycles(m, a, alpha):
        r = reconstruct(ExtensionData(m, a, alpha, rho))
        assert r.problems() == []
        assert len(r) == len(m) * len(a)
