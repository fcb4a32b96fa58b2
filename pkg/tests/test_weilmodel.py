import itertools
import json

import pytest
from hypothesis import given

from weiltate.groupring import GroupRingElt, norm_element, stabilizer, translate
from weiltate.weilmodel import (
    FieldContext,
    WeilClass,
    classify,
    classify_section,
    construct_beta,
    enumerate_sections,
    is_ordinary_divisor,
    is_section,
    orbits,
    standard_classes,
    standard_quadruple,
)

from conftest import contexts

S1, S2, S3, C = 1, 2, 4, 7


def brute_sections(ctx):
    # every {0,2}-vector, filtered by the section equation
    out = []
    for v in itertools.product((0, 2), repeat=ctx.order):
        if all(v[g] + v[g ^ ctx.c] == 2 for g in range(ctx.order)):
            out.append(GroupRingElt(ctx.k, v))
    return out


def test_context_invariants():
    ctx = FieldContext.standard()
    assert ctx.c == S1 ^ S2 ^ S3
    assert len(ctx.cosets()) == 4
    assert FieldContext(0, 0).cosets() == [(0,)]
    with pytest.raises(ValueError):
        FieldContext(2, 0)
    with pytest.raises(ValueError):
        FieldContext(0, 1)
    with pytest.raises(ValueError):
        FieldContext(2, 4)


def test_section_counts():
    assert len(enumerate_sections(FieldContext.standard())) == 16
    assert len(enumerate_sections(FieldContext(1, 1))) == 2
    assert len(enumerate_sections(FieldContext(2, 3))) == 4
    assert enumerate_sections(FieldContext(0, 0)) == []


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_section_count_formula(k):
    for c in range(1, 1 << k):
        assert len(enumerate_sections(FieldContext(k, c))) == 2 ** (2 ** (k - 1))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sections_match_brute_force(k):
    for c in range(1, 1 << k):
        ctx = FieldContext(k, c)
        got = enumerate_sections(ctx)
        assert got == sorted(got, key=lambda m: m.coeffs)
        assert set(got) == set(brute_sections(ctx))


@given(contexts(1, 4))
def test_every_section_pairs_with_conjugate_to_q(ctx):
    for m in enumerate_sections(ctx):
        assert m + translate(ctx.c, m) == ctx.q_divisor
        assert is_ordinary_divisor(ctx, m)
        info = classify_section(ctx, m)
        assert info.field_degree >= 2
        assert ctx.c not in info.stabilizer
        assert translate(ctx.c, m) != m
    assert not is_ordinary_divisor(ctx, GroupRingElt.constant(ctx.k, 1))


def test_classify_examples(std):
    m1, *_ = standard_quadruple(std)
    info = classify_section(std, m1)
    assert (info.field_degree, info.is_elliptic, info.dimension) == (2, True, 1)
    beta = construct_beta(std)
    info = classify_section(std, beta.divisor)
    assert (info.field_degree, info.is_elliptic, info.dimension) == (8, False, 4)
    ss = classify(std, WeilClass.supersingular("E", std))
    assert (ss.is_elliptic, ss.dimension) == (True, 1)
    with pytest.raises(ValueError):
        classify_section(std, norm_element(3))


def test_orbits_standard(std):
    assert len(orbits(std, mod_c=True)) == 8
    both = orbits(std, mod_c=True, mod_galois=True)
    sizes = sorted(len(o) // 2 for o in both)
    assert sizes == [1, 1, 1, 1, 4]
    for o in both:
        stab = stabilizer(o[0])
        assert len(stab) == (4 if len(o) == 2 else 1)
    big = next(o for o in both if len(o) == 8)
    assert construct_beta(std).divisor in big


def test_orbits_k1():
    assert len(orbits(FieldContext(1, 1), mod_c=True)) == 1
    assert len(orbits(FieldContext(1, 1), mod_c=False)) == 2


@given(contexts(1, 3))
def test_orbit_refinement(ctx):
    n = len(enumerate_sections(ctx))
    fine = orbits(ctx, mod_c=False)
    mid = orbits(ctx, mod_c=True)
    coarse = orbits(ctx, mod_c=True, mod_galois=True)
    for part in (fine, mid, coarse):
        assert sum(len(o) for o in part) == n
    for small in mid:
        assert any(set(small) <= set(o) for o in coarse)
    assert len(fine) == n


def test_standard_quadruple(std):
    quad = standard_quadruple(std)
    kernels = [
        [0, S2, S3, S2 ^ S3],  # chi1
        [0, S1, S3, S1 ^ S3],  # chi2
        [0, S1, S2, S1 ^ S2],  # chi3
        [0, S1 ^ S2, S1 ^ S3, S2 ^ S3],  # chi1 chi2 chi3
    ]
    for m, ker in zip(quad, kernels):
        assert is_section(std, m)
        assert stabilizer(m) == ker
    m1, m2, m3, _ = quad
    assert (m1 + m2 + m3).halve() == GroupRingElt(3, (3, 2, 2, 1, 2, 1, 1, 0))
    with pytest.raises(ValueError):
        standard_quadruple(FieldContext(3, 1))


def test_beta(std):
    beta = construct_beta(std)
    assert beta.kind == "ordinary"
    assert is_section(std, beta.divisor)
    assert stabilizer(beta.divisor) == [0]
    m1, m2, m3, m4 = standard_quadruple(std)
    lhs = (m1 + m2 + m3 + translate(C, m4)).halve()
    assert lhs == norm_element(3) + GroupRingElt.from_terms(3, {0: 2, S1: 2, S2: 2, S3: 2})
    assert lhs == norm_element(3) + beta.divisor
    with pytest.raises(ValueError):
        construct_beta(FieldContext(2, 3))


def test_exhausts_ordinary_classes_in_K(std):
    # 4 quadratic classes (alpha1..alpha4) + the Galois orbit of beta, up to c
    named = {m for m in standard_quadruple(std)} | {translate(C, m) for m in standard_quadruple(std)}
    beta_orbit = {translate(g, construct_beta(std).divisor) for g in range(8)}
    assert named | beta_orbit == set(enumerate_sections(std))
    assert len(beta_orbit) == 8


def test_weilclass_validation(std):
    with pytest.raises(ValueError):
        WeilClass.ordinary("x", std, GroupRingElt.constant(3, 1))
    with pytest.raises(ValueError):
        WeilClass("x", "supersingular", GroupRingElt.constant(3, 2))
    with pytest.raises(ValueError):
        WeilClass("x", "weird", GroupRingElt.constant(3, 1))
    with pytest.raises(ValueError):
        WeilClass.ordinary("x", std, GroupRingElt.from_terms(3, {0: 2, C: 2}))


def test_weilclass_json(std):
    for cls in standard_classes(std) + [construct_beta(std), WeilClass.supersingular("E", std)]:
        assert WeilClass.from_json(json.loads(json.dumps(cls.to_json()))) == cls
    assert FieldContext.from_json(std.to_json()) == std
    assert construct_beta(std).to_json() == {
        "label": "beta",
        "kind": "ordinary",
        "divisor": [2, 2, 2, 0, 2, 0, 0, 0],
    }
