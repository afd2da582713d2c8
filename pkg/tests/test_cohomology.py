"""Degree-wise cohomology, canonical classes, ring presentations."""

import random

import pytest

from dgfree import (GF, boundary_matrix, boundary_rank, canonical_class,
                    class_product, cohomology_basis, cohomology_dim,
                    cohomology_report, is_coboundary, preset_algebra,
                    preset_presentation, ring_presentation_check)
from dgfree.cohomology import DEFAULT_MAX_DEGREE, boundary_nullity, max_degree_cap

from oracles import random_homogeneous

EXPECTED_RANKS = [2, 6, 20, 60, 182, 546]


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_dimension_table_through_degree_six(name):
    a = preset_algebra(name)
    assert [cohomology_dim(a, d) for d in range(7)] == [1] * 7
    assert [boundary_rank(a, d) for d in range(1, 7)] == EXPECTED_RANKS
    assert boundary_nullity(a, 2) == 3
    assert boundary_rank(a, 1) == 2


def test_boundary_matrix_shapes():
    a = preset_algebra("a1")
    m = boundary_matrix(a, 2)
    assert (m.rows, m.cols) == (27, 9)
    assert boundary_matrix(a, 0).cols == 1


@pytest.mark.parametrize("name,h1,h2", [
    ("a1", "x3", "x1*x3 + x3*x1"),
    ("a2", "y3", "y1*y1 + y2*y3 + y3*y2"),
])
def test_low_degree_representatives(name, h1, h2):
    a = preset_algebra(name)
    (b1,) = cohomology_basis(a, 1)
    (b2,) = cohomology_basis(a, 2)
    assert a.render(b1.representative) == h1
    assert a.render(b2.representative) == h2
    # the expected classes canonicalize onto the basis classes
    assert canonical_class(a, a.parse(h1)) == b1
    assert canonical_class(a, a.parse(h2)) == b2


def test_canonical_class_scalar_and_coboundary_invariance():
    a = preset_algebra("a1")
    z = a.parse("x1*x3 + x3*x1")
    cls = canonical_class(a, z)
    assert canonical_class(a, z.scale(a.field.coerce("7/3"))) == cls
    rng = random.Random(41)
    for _ in range(10):
        w = random_homogeneous(rng, a, 1)
        assert canonical_class(a, z + a.differential(w)) == cls


def test_canonical_class_rejects_non_cocycles():
    a = preset_algebra("a1")
    with pytest.raises(ValueError):
        canonical_class(a, a.generator(1))


def test_is_coboundary():
    a = preset_algebra("a1")
    z = a.parse("x3*x3")
    pre = is_coboundary(a, z)
    assert pre is not None and a.differential(pre) == z
    assert is_coboundary(a, z.scale(a.field.coerce(2))) is not None
    assert is_coboundary(a, a.parse("x3")) is None
    assert is_coboundary(a, a.zero()) == a.zero()
    with pytest.raises(ValueError):
        is_coboundary(a, a.generator(1))  # not a cocycle


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_class_product_structure(name):
    a = preset_algebra(name)
    (u,) = cohomology_basis(a, 1)
    (v,) = cohomology_basis(a, 2)
    # u^2 is a coboundary, so [u][u] = 0
    assert class_product(a, u, u).is_zero()
    # the product with the degree-2 class generates degree 3
    uv = class_product(a, u, v)
    assert not uv.is_zero()
    assert uv == cohomology_basis(a, 3)[0]
    # commutation holds at class level
    assert class_product(a, v, u) == uv


def test_class_product_representative_independence():
    a = preset_algebra("a2")
    (u,) = cohomology_basis(a, 1)
    (v,) = cohomology_basis(a, 2)
    base = class_product(a, u, v)
    rng = random.Random(7)
    for _ in range(10):
        w = random_homogeneous(rng, a, 1)
        from dgfree.cohomology import CohomologyClass
        perturbed = CohomologyClass(2, v.representative + a.differential(w))
        assert class_product(a, u, perturbed) == base


def test_degree_cap(monkeypatch):
    a = preset_algebra("a1")
    assert max_degree_cap() == 9
    (u,) = cohomology_basis(a, 1)
    nine = canonical_class(a, u.representative.power(9))
    with pytest.raises(ValueError):
        class_product(a, nine, u)
    monkeypatch.setenv("DGFREE_MAX_DEGREE", "10")
    assert max_degree_cap() == 10
    monkeypatch.setenv("DGFREE_MAX_DEGREE", "25")
    with pytest.raises(ValueError):
        max_degree_cap()
    monkeypatch.setenv("DGFREE_MAX_DEGREE", "junk")
    with pytest.raises(ValueError):
        max_degree_cap()


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_preset_presentation_passes(name):
    a = preset_algebra(name)
    pres = preset_presentation(name, a)
    report = ring_presentation_check(a, pres, max_degree=6)
    assert report["pass"]
    by_kind = {}
    for c in report["checks"]:
        by_kind.setdefault(c["check"], []).append(c)
    assert len(by_kind["generator"]) == 2
    assert len(by_kind["relation"]) == 1
    assert len(by_kind["commutation"]) == 1
    assert len(by_kind["spanning"]) == 7
    for c in report["checks"]:
        assert c["pass"], c


def test_commutation_witness_identities():
    # the commutator of the two generating classes is an explicit boundary
    a1 = preset_algebra("a1")
    u1, u2 = a1.parse("x3"), a1.parse("x1*x3 + x3*x1")
    assert a1.differential(a1.parse("x1*x1")) == u1 * u2 - u2 * u1
    a2 = preset_algebra("a2")
    v1, v2 = a2.parse("y3"), a2.parse("y1*y1 + y2*y3 + y3*y2")
    assert a2.differential(a2.parse("y1*y2 + y2*y1")) == v1 * v2 - v2 * v1


def test_relation_witness_identities():
    # the squares of the degree-1 classes bound explicitly
    a1 = preset_algebra("a1")
    assert a1.differential(a1.parse("x1")) == a1.parse("x3*x3")
    a2 = preset_algebra("a2")
    assert a2.differential(a2.parse("y1")) == a2.parse("y3*y3")


def test_presentation_check_rejects_over_cap():
    a = preset_algebra("a1")
    pres = preset_presentation("a1", a)
    with pytest.raises(ValueError):
        ring_presentation_check(a, pres, max_degree=12)


def test_presentation_failure_is_reported_not_raised():
    from dgfree.cohomology import RingPresentation
    a = preset_algebra("a1")
    # claim x3*x3 (a coboundary) generates: nonzero-class check must fail
    pres = RingPresentation(
        generators=(("w", a.parse("x3*x3")),),
        relations=(),
        commutations=(),
    )
    report = ring_presentation_check(a, pres, max_degree=3)
    assert not report["pass"]
    gen_check = [c for c in report["checks"] if c["check"] == "generator"][0]
    assert not gen_check["nonzero_class"]


def test_cohomology_report_shape():
    a = preset_algebra("a1")
    report = cohomology_report(a, max_degree=4)
    assert [row["dim"] for row in report["degrees"]] == [1] * 5
    assert report["degrees"][1]["basis"] == ["x3"]
    assert report["presentation_checks"] == []
    assert DEFAULT_MAX_DEGREE == 6


def test_prime_field_dimensions_match():
    a = preset_algebra("a1", GF(7))
    assert [cohomology_dim(a, d) for d in range(5)] == [1] * 5
