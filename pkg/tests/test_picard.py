"""Triangular matrix groups, commutators, invariant subgroups, the verdict."""

import random
from fractions import Fraction

import pytest

from dgfree import (G1Element, G2Element, GF, Matrix, QQ, abelianization,
                    commutator, commutator_subgroup_brute_force,
                    commutator_witness, conjugation_action,
                    expected_g2_subgroups, g1_identity, g2_identity,
                    invariant_subgroup_census, inverse, kernel_membership,
                    mul, non_isomorphism_certificate, symbolic_group_checks)
from dgfree.picard import identity_like, kernel_coords_set

CHECK_NAMES = [
    "g1_closure", "g1_homomorphism", "g1_inverse",
    "g2_closure", "g2_homomorphism", "g2_inverse",
    "g1_commutator_witness", "g2_commutator_witness",
    "g1_conjugation_action", "g2_conjugation_action",
]


def random_g1(rng, f, p=None):
    a = rng.randint(1, (p - 1) if p else 9)
    b = rng.randint(0, (p - 1) if p else 9)
    return G1Element(f, f.coerce(a), f.coerce(b))


def random_g2(rng, f, p=None):
    a = rng.randint(1, (p - 1) if p else 9)
    b = rng.randint(0, (p - 1) if p else 9)
    c = rng.randint(0, (p - 1) if p else 9)
    return G2Element(f, f.coerce(a), f.coerce(b), f.coerce(c))


def as_matrix(f, g):
    return Matrix.from_rows(f, [list(row) for row in g.matrix()])


def test_leading_entry_must_be_invertible():
    with pytest.raises(ValueError):
        G1Element(QQ, QQ.zero, QQ.one)
    with pytest.raises(ValueError):
        G2Element(GF(5), GF(5).zero, GF(5).one, GF(5).one)


def test_matrix_forms():
    g = G1Element(QQ, Fraction(1, 2), Fraction(3))
    assert g.matrix() == ((Fraction(1, 2), Fraction(3)),
                          (Fraction(0), Fraction(1, 4)))
    h = G2Element(QQ, Fraction(2), Fraction(1), Fraction(5))
    assert h.matrix() == ((Fraction(2), Fraction(1), Fraction(5)),
                          (Fraction(0), Fraction(4), Fraction(4)),
                          (Fraction(0), Fraction(0), Fraction(8)))


@pytest.mark.parametrize("builder,ident", [
    (random_g1, g1_identity), (random_g2, g2_identity)])
def test_group_operations_match_matrix_product(builder, ident):
    f = GF(7)
    rng = random.Random(29)
    for _ in range(25):
        g, h = builder(rng, f, 7), builder(rng, f, 7)
        prod = mul(g, h)
        assert as_matrix(f, g).matmul(as_matrix(f, h)) == as_matrix(f, prod)
        assert mul(g, inverse(g)) == ident(f)
        assert mul(inverse(g), g) == ident(f)
        assert abelianization(prod) == f.mul(g.a, h.a)


def test_g2_multiplication_formula():
    f = QQ
    g = G2Element(f, Fraction(2), Fraction(3), Fraction(5))
    h = G2Element(f, Fraction(7), Fraction(1), Fraction(2))
    k = mul(g, h)
    # (aa', ab' + ba'^2, ac' + 2ba'b' + ca'^3)
    assert k.coords() == (Fraction(14), Fraction(2 * 1 + 3 * 49),
                          Fraction(2 * 2 + 2 * 3 * 7 * 1 + 5 * 343))


def test_mixed_group_products_rejected():
    g = G1Element(QQ, QQ.one, QQ.one)
    h = G2Element(QQ, QQ.one, QQ.one, QQ.one)
    with pytest.raises(TypeError):
        mul(g, h)
    with pytest.raises(ValueError):
        mul(g, G1Element(GF(5), GF(5).one, GF(5).one))


def test_kernel_membership_and_law():
    f = GF(5)
    x = G2Element(f, f.one, f.coerce(2), f.coerce(3))
    y = G2Element(f, f.one, f.coerce(1), f.coerce(4))
    assert kernel_membership(x) and kernel_membership(y)
    assert not kernel_membership(G2Element(f, f.coerce(2), f.zero, f.zero))
    z = mul(x, y)
    # kernel law (s,t)(s',t') = (s+s', t+t'+2ss')
    assert z.b == f.add(x.b, y.b)
    assert z.c == f.add(f.add(x.c, y.c), f.mul(f.coerce(2), f.mul(x.b, y.b)))


@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_commutator_witness_g1(field):
    rng = random.Random(43)
    for _ in range(10):
        b = field.coerce(rng.randint(0, 6))
        k = G1Element(field, field.one, b)
        g, h = commutator_witness(k)
        assert commutator(g, h) == k
        if not field.is_zero(b):
            assert g.a == field.inv(field.coerce(2))
            assert (h.a, h.b) == (field.one, b)


@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_commutator_witness_g2(field):
    rng = random.Random(47)
    for _ in range(10):
        b = field.coerce(rng.randint(0, 6))
        c = field.coerce(rng.randint(0, 6))
        k = G2Element(field, field.one, b, c)
        g, h = commutator_witness(k)
        assert commutator(g, h) == k
        if not (field.is_zero(b) and field.is_zero(c)):
            half = field.inv(field.coerce(2))
            diag = tuple(g.matrix()[i][i] for i in range(3))
            assert diag == (half, field.mul(half, half),
                            field.mul(half, field.mul(half, half)))
            two_b2 = field.mul(field.coerce(2), field.mul(b, b))
            assert h.c == field.div(field.add(c, two_b2), field.coerce(3))


def test_commutator_witness_identity_and_errors():
    f = GF(5)
    e = g2_identity(f)
    assert commutator_witness(e) == (e, e)
    with pytest.raises(ValueError):
        commutator_witness(G2Element(f, f.coerce(2), f.zero, f.zero))


@pytest.mark.parametrize("builder", [random_g1, random_g2])
def test_conjugation_action_depends_only_on_leading_entry(builder):
    f = GF(7)
    rng = random.Random(53)
    for _ in range(20):
        g = builder(rng, f, 7)
        k = builder(rng, f, 7)
        k = identity_like(k) if not isinstance(k, G1Element) else k
        # force k into the kernel
        if isinstance(k, G1Element):
            k = G1Element(f, f.one, k.b)
        else:
            k = G2Element(f, f.one, f.coerce(rng.randint(0, 6)),
                          f.coerce(rng.randint(0, 6)))
        conj = mul(mul(g, k), inverse(g))
        assert conj == conjugation_action(g.a, k)
    with pytest.raises(ValueError):
        conjugation_action(f.zero, G1Element(f, f.one, f.one))
    with pytest.raises(ValueError):
        conjugation_action(f.one, G1Element(f, f.coerce(2), f.one))


def test_conjugation_formula_values():
    f = QQ
    k = G2Element(f, f.one, Fraction(6), Fraction(12))
    out = conjugation_action(Fraction(3), k)
    assert (out.b, out.c) == (Fraction(2), Fraction(12, 9))


def test_symbolic_group_checks_all_pass():
    checks = symbolic_group_checks(seed=0)
    assert [name for name, _ in checks] == CHECK_NAMES
    assert all(ok for _, ok in checks)


@pytest.mark.parametrize("p", [5, 7])
def test_invariant_subgroup_census(p):
    c1 = invariant_subgroup_census("G1", p)
    assert c1.count == 2
    sizes = sorted(len(s) for s in c1.subgroups)
    assert sizes == [1, p]
    c2 = invariant_subgroup_census("G2", p)
    assert c2.count == 4
    expected = expected_g2_subgroups(p)
    for sub in expected:
        assert sub in c2.subgroups
    assert sorted(len(s) for s in c2.subgroups) == [1, p, p, p * p]


def test_census_input_validation():
    with pytest.raises(ValueError):
        invariant_subgroup_census("G3", 5)
    with pytest.raises(ValueError):
        invariant_subgroup_census("G1", 3)


@pytest.mark.parametrize("group", ["G1", "G2"])
def test_commutator_subgroup_is_the_kernel(group):
    brute = commutator_subgroup_brute_force(group, 5)
    assert brute == kernel_coords_set(group, 5)


def test_certificate_separates_the_groups():
    report = non_isomorphism_certificate(5)
    assert report["verdict"] == "DPic(A1) != DPic(A2)"
    assert report["isomorphic"] is False
    assert report["census"]["g1"] == 2
    assert report["census"]["g2"] == 4
    assert report["g2_expected_subgroups_present"]
    assert all(c["pass"] for c in report["symbolic_checks"])
    assert report["commutator_equals_kernel"] == {"g1": True, "g2": True}
    assert [d["shift_factor"] for d in report["descriptors"]] == ["Z", "Z"]


def test_certificate_degenerate_comparison():
    report = non_isomorphism_certificate(5, compare=("G2", "G2"))
    assert report["verdict"] == "indistinguishable by this invariant"
    assert report["isomorphic"] is None
    assert "g2_expected_subgroups_present" not in report


def test_certificate_validates_prime():
    for bad in (4, 6, 3, 1):
        with pytest.raises(ValueError):
            non_isomorphism_certificate(bad)
    with pytest.raises(ValueError):
        non_isomorphism_certificate(5, compare=("G1", "G9"))
