import json

import pytest
from hypothesis import given, strategies as st

from weiltate import groupring
from weiltate.groupring import (
    GroupRingElt,
    defect,
    element_name,
    mul,
    norm_element,
    parse_element,
    stabilizer,
    subgroup_closure,
    translate,
)

from conftest import group_ring_elts, same_rank

S1, S2, S3 = 1, 2, 4
C = 7


def E(k, *terms):
    """Sum of group elements with multiplicity, e.g. E(3, 0, S2) = 1 + s2."""
    return GroupRingElt.from_terms(k, list(terms))


def naive_mul(x, y):
    # group elements as frozensets of generator indices; law = symmetric difference
    def as_set(g):
        return frozenset(i for i in range(x.k) if g >> i & 1)

    acc = {}
    for a, xa in enumerate(x.coeffs):
        for b, yb in enumerate(y.coeffs):
            key = as_set(a) ^ as_set(b)
            acc[key] = acc.get(key, 0) + xa * yb
    out = [0] * (1 << x.k)
    for key, val in acc.items():
        out[sum(1 << i for i in key)] = val
    return out


def test_product_of_two_factors():
    x = mul(E(3, 0, S2), E(3, 0, S3))
    assert x == E(3, 0, S2, S3, S2 ^ S3)


@given(group_ring_elts())
def test_one_is_identity(x):
    assert mul(x, GroupRingElt.one(x.k)) == x


def test_norm_squared():
    n = norm_element(3)
    assert mul(n, n) == n.scale(8)


@given(same_rank())
def test_mul_matches_naive_convolution(pair):
    x, y = pair
    assert list(mul(x, y).coeffs) == naive_mul(x, y)


@given(same_rank(3))
def test_ring_axioms(triple):
    x, y, z = triple
    assert mul(x, y) == mul(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, y + z) == mul(x, y) + mul(x, z)
    assert (x + y) + z == x + (y + z)
    assert x - x == GroupRingElt.zero(x.k)


def test_rank_mismatch():
    with pytest.raises(ValueError):
        mul(norm_element(2), norm_element(3))
    with pytest.raises(ValueError):
        norm_element(2) + norm_element(1)
    with pytest.raises(ValueError):
        defect(norm_element(2), norm_element(3))


def test_translate_examples():
    x = E(3, 0, S1 ^ S2, S1 ^ S3, S2 ^ S3)
    assert translate(C, x) == E(3, C, S3, S2, S1)
    assert translate(0, x) == x
    assert translate(C, norm_element(3)) == norm_element(3)


@given(same_rank(), st.data())
def test_translate_is_module_automorphism(pair, data):
    # translation is multiplication by g: additive and Z[G]-linear, not multiplicative
    x, y = pair
    g = data.draw(st.integers(0, (1 << x.k) - 1))
    h = data.draw(st.integers(0, (1 << x.k) - 1))
    assert translate(g, x + y) == translate(g, x) + translate(g, y)
    assert translate(g, mul(x, y)) == mul(translate(g, x), y) == mul(x, translate(g, y))
    assert translate(g, translate(h, x)) == translate(g ^ h, x)
    assert translate(g, translate(g, x)) == x
    assert translate(g, x) == mul(GroupRingElt.basis(x.k, g), x)
    assert sorted(translate(g, x).coeffs) == sorted(x.coeffs)


def test_translate_is_not_multiplicative():
    s1 = GroupRingElt.basis(1, 1)
    assert translate(1, mul(s1, s1)) == s1
    assert mul(translate(1, s1), translate(1, s1)) == GroupRingElt.one(1)


def test_translate_bad_element():
    with pytest.raises(ValueError):
        translate(8, norm_element(3))


def test_norm_element():
    assert norm_element(3).coeffs == (1,) * 8
    assert norm_element(0).coeffs == (1,)
    for g in range(8):
        assert mul(GroupRingElt.basis(3, g), norm_element(3)) == norm_element(3)


def test_defect_of_standard_exponents():
    m = GroupRingElt(3, (3, 2, 2, 1, 2, 1, 1, 0))
    m_prime = GroupRingElt(3, (2, 1, 1, 0, 3, 2, 2, 1))
    assert defect(m, norm_element(3)) == {C}
    assert defect(m_prime, norm_element(3)) == {S1 ^ S2}


def test_defect_of_exotic_relation_is_empty():
    m = GroupRingElt(3, (3, 2, 2, 1, 2, 1, 1, 0))
    m4 = E(3, 0, S1 ^ S2, S1 ^ S3, S2 ^ S3)
    mbeta = E(3, 0, S1, S2, S3)
    total = m + translate(C, m4) + translate(C, mbeta).scale(2)
    assert defect(total, norm_element(3).scale(3)) == set()
    assert total == norm_element(3).scale(3)


@given(same_rank())
def test_defect_iff_negative_difference(pair):
    x, t = pair
    d = defect(x, t)
    assert (not d) == all(a >= 0 for a in (x - t).coeffs)


def test_stabilizer_examples():
    assert stabilizer(E(3, 0, S2, S3, S2 ^ S3)) == [0, S2, S3, S2 ^ S3]
    assert stabilizer(E(3, 0, S1, S2, S3)) == [0]
    assert stabilizer(norm_element(3)) == list(range(8))


@given(group_ring_elts(lo=-2, hi=2))
def test_stabilizer_is_subgroup(x):
    stab = stabilizer(x)
    assert 0 in stab
    assert all(a ^ b in stab for a in stab for b in stab)
    assert subgroup_closure(x.k, stab) == stab


def test_exact_big_coefficients():
    big = GroupRingElt(1, (10**40, -(10**40) + 1))
    sq = mul(big, big)
    assert sq.coeffs == (10**80 + (10**40 - 1) ** 2, -2 * 10**40 * (10**40 - 1))


def test_element_names_round_trip():
    for g in range(16):
        assert parse_element(element_name(g)) == g
    assert element_name(C) == "s1s2s3"
    assert str(E(3, 0, 0, S3, C)) == "2 + s3 + s1s2s3"


def test_json_round_trip():
    x = GroupRingElt(2, (1, -2, 0, 5))
    assert GroupRingElt.from_json(json.loads(json.dumps(x.to_json()))) == x
    with pytest.raises(ValueError):
        GroupRingElt.from_json([1, 2, 3])


def test_rank_cap(monkeypatch):
    with pytest.raises(ValueError):
        GroupRingElt.zero(groupring.MAX_RANK + 1)
    monkeypatch.setattr(groupring, "MAX_RANK", 2)
    with pytest.raises(ValueError):
        norm_element(3)


def test_wrong_length():
    with pytest.raises(ValueError):
        GroupRingElt(2, (1, 2, 3))
