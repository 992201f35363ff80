import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import mat
from wreathkit import (
    GF,
    QQ,
    FinMonoid,
    Mor,
    WreathData,
    braid,
    check_monoid,
    check_wreath,
    from_distributive_law,
    identity_wreath,
    linearize,
    tensor_monoid,
    wreath_product,
)
from wreathkit.errors import ShapeError, ValidationError
from wreathkit.extension import analyze_fibration, extension_to_wreath, reconstruct
from wreathkit.fixtures import z4_fibration
from wreathkit.tensor import random_mor, zero

AXIOMS = [f"axiom{i}" for i in range(1, 8)]


def dl(fs, fa, f=QQ):
    s, a = linearize(fs, f, "S").monoid, linearize(fa, f, "A").monoid
    return s, a, from_distributive_law(s, a, braid(a.carrier, s.carrier, f))


def test_identity_wreath():
    a = linearize(FinMonoid.cyclic(3), QQ).monoid
    wd = identity_wreath(a)
    r = check_wreath(wd)
    assert r.names == AXIOMS and r.passed
    p = wreath_product(wd)
    assert p.carrier == a.carrier and p.mul == a.mul and p.unit == a.unit


def test_distributive_law_wreaths_pass():
    for f in (QQ, GF(5)):
        s, a, wd = dl(FinMonoid.cyclic(2), FinMonoid.cyclic(3), f)
        assert check_wreath(wd).passed
        assert wreath_product(wd).mul == tensor_monoid(s, a).mul


def test_distributive_law_klein_table():
    _, _, wd = dl(FinMonoid.cyclic(2), FinMonoid.cyclic(2))
    v4 = linearize(FinMonoid.cyclic(2).product(FinMonoid.cyclic(2)), QQ)
    assert mat(wreath_product(wd).mul) == mat(v4.mul)


def test_braid_law_swaps_basis_pairs():
    # λ(g⊗x) = x⊗g for g in Z/3, x in Z/2
    _, _, wd = dl(FinMonoid.cyclic(2), FinMonoid.cyclic(3))
    for g in range(3):
        for x in range(2):
            assert wd.lam.column(g * 2 + x) == [int(r == x * 3 + g) for r in range(6)]


def test_zero_lambda_breaks_unit_axiom():
    s, a, wd = dl(FinMonoid.cyclic(2), FinMonoid.cyclic(2))
    bad = WreathData(wd.monoid, wd.s, wd.nu, wd.sigma0, zero(wd.lam.dom, wd.lam.cod))
    r = check_wreath(bad)
    e = r["axiom2"]
    assert not e.passed and e.witness is not None
    assert e.witness.left == 0 and e.witness.right == 1
    with pytest.raises(ValidationError) as info:
        wreath_product(bad)
    assert info.value.report is not None and not info.value.report.passed


def test_extension_wreath_product_is_z4():
    ed = analyze_fibration(z4_fibration())
    wd = extension_to_wreath(ed)
    assert check_wreath(wd).passed
    p = wreath_product(wd)
    assert check_monoid(p).passed
    assert mat(p.mul) == mat(linearize(reconstruct(ed), QQ).mul)


def test_brackets_agree():
    ed = analyze_fibration(z4_fibration())
    wd = extension_to_wreath(ed)
    assert wreath_product(wd).mul == wreath_product(wd, right_bracketed=True).mul


def test_shape_checks():
    s, a, wd = dl(FinMonoid.cyclic(2), FinMonoid.cyclic(2))
    with pytest.raises(ShapeError):
        WreathData(wd.monoid, wd.s, wd.lam, wd.sigma0, wd.lam)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3]), st.sampled_from([2, 3]), st.sampled_from([QQ, GF(3), GF(5)]), st.integers(0, 10**6))
def test_random_lambda_never_crashes_and_reports_all(ns, na, f, seed):
    rng = random.Random(seed)
    s, a, wd = dl(FinMonoid.cyclic(ns), FinMonoid.cyclic(na), f)
    lam = random_mor(wd.lam.dom, wd.lam.cod, f, rng)
    r = check_wreath(WreathData(wd.monoid, wd.s, wd.nu, wd.sigma0, lam))
    assert r.names == AXIOMS
    for e in r.failures:
        assert e.witness.left != e.witness.right


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([FinMonoid.cyclic(2), FinMonoid.cyclic(3), FinMonoid.symmetric3()]), st.sampled_from([FinMonoid.cyclic(2), FinMonoid.cyclic(3)]))
def test_braid_distributive_law_always_a_wreath(fs, fa):
    s, a, wd = dl(fs, fa, GF(3))
    assert check_wreath(wd).passed
    assert check_monoid(wreath_product(wd)).passed
