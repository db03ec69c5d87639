"""Permutation and element-table tests against brute-force oracles.

Covers composition laws, closure, stabilizer chains, conjugacy classes,
centers, derived subgroups, quotients, and fingerprints on small fixed
groups plus a couple of larger frozen cases.
"""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from autkit import fp
from autkit.perm import Permutation, PermutationGroup, PermError, compose, parse_cycles
from autkit.table import CapExceeded, GroupTable

from oracles import perm_mul, perm_closure


def cyc(degree, *cycles):
    return Permutation.from_cycles(degree, list(cycles))


S3_GENS = [cyc(3, (0, 1)), cyc(3, (0, 1, 2))]


def random_perm(rng, degree):
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation(images)


# -- composition -----------------------------------------------------------

def test_compose_identity():
    x = cyc(5, (0, 3, 1))
    e = Permutation.identity(5)
    assert compose(e, x) == x
    assert compose(x, e) == x


def test_compose_three_cycle_squared():
    a = cyc(3, (0, 1, 2))
    assert compose(a, a) == cyc(3, (0, 2, 1))


def test_compose_is_left_to_right():
    a = cyc(4, (0, 1))
    b = cyc(4, (1, 2))
    ab = compose(a, b)
    for i in range(4):
        assert ab(i) == b(a(i))
    assert ab.images == perm_mul(a.images, b.images)


def test_compose_inverse_law():
    rng = random.Random(7)
    for _ in range(25):
        x = random_perm(rng, 10)
        assert compose(x, x.inverse()) == Permutation.identity(10)
        assert compose(x.inverse(), x) == Permutation.identity(10)


def test_compose_degree_mismatch():
    with pytest.raises(PermError):
        compose(cyc(3, (0, 1)), cyc(4, (0, 1)))


def test_not_a_bijection_rejected():
    with pytest.raises(PermError):
        Permutation([0, 0, 1])
    with pytest.raises(PermError):
        Permutation([1, 2, 3])


@given(st.integers(0, 10 ** 9), st.integers(0, 10 ** 9), st.integers(0, 10 ** 9))
@settings(max_examples=60, deadline=None)
def test_compose_associative(sa, sb, sc):
    perms = []
    for seed in (sa, sb, sc):
        rng = random.Random(seed)
        perms.append(random_perm(rng, 10))
    a, b, c = perms
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_pow_and_order():
    a = cyc(6, (0, 1, 2, 3, 4, 5))
    assert a ** 6 == Permutation.identity(6)
    assert a ** -1 == a.inverse()
    assert a.order() == 6
    assert (a ** 2).order() == 3


def test_conjugation_convention():
    # a ** b is b^-1 * a * b under left-to-right composition
    a = cyc(4, (0, 1))
    b = cyc(4, (0, 1, 2, 3))
    assert a ** b == b.inverse() * a * b
    assert a ** b == cyc(4, (1, 2))


def test_parse_cycles_one_based():
    p = parse_cycles("(2,9,4,6,3,7,5,8)", 9)
    assert p(1) == 8 and p(8) == 3
    assert p.order() == 8


# -- closure ---------------------------------------------------------------

def test_closure_s3():
    t = GroupTable.close(S3_GENS)
    assert t.n == 6
    got = {t.perm(i).images for i in range(6)}
    assert got == perm_closure([g.images for g in S3_GENS])


def test_closure_sixteen_cycle():
    t = GroupTable.close([cyc(16, tuple(range(16)))])
    assert t.n == 16


def test_closure_identity_first():
    t = GroupTable.close(S3_GENS)
    assert t.perm(0).is_identity()


def test_closure_order16_d8_presentation():
    pres = fp.Presentation.parse("a,b | a^8 ; b^2 ; a^b*a")
    g = fp.regular_rep(pres)
    t = GroupTable.close(list(g.generators))
    assert t.n == 16


def test_closure_deterministic():
    t1 = GroupTable.close(S3_GENS)
    t2 = GroupTable.close(S3_GENS)
    assert [t1.perm(i) for i in range(6)] == [t2.perm(i) for i in range(6)]


def test_closure_cap_exceeded():
    with pytest.raises(CapExceeded):
        GroupTable.close(S3_GENS, cap=4)


def test_closure_empty_generators_is_trivial():
    t = GroupTable.close([])
    assert t.n == 1


# -- stabilizer chains -----------------------------------------------------

def test_chain_trivial_group():
    g = PermutationGroup.from_gens([Permutation.identity(4)])
    assert g.order() == 1


def test_chain_s3():
    g = PermutationGroup.from_gens(S3_GENS)
    assert g.order() == 6


def test_chain_sylow2_gl27():
    from autkit.matgroups import sylow2_gl2

    g = sylow2_gl2(7).to_perm_group()
    assert g.order() == 32


def test_chain_membership_matches_closure():
    g = PermutationGroup.from_gens(S3_GENS)
    t = GroupTable.close(S3_GENS)
    members = {t.perm(i) for i in range(t.n)}
    rng = random.Random(3)
    for _ in range(40):
        x = random_perm(rng, 3)
        assert g.contains(x) == (x in members)


def chain_fixtures():
    from autkit import constructors as C

    groups = [PermutationGroup.from_gens(S3_GENS),
              C.build(C.Dihedral(12)),
              C.build(C.Dicyclic(16)),
              C.build(C.DirectProduct((C.Cyclic(6), C.Cyclic(10))))]
    groups += [C.order16(name) for name in C.ORDER16_NAMES]
    groups.append(C.family_16p2("QD8", 3, "full"))
    groups.append(C.holomorph(C.Cyclic(17)))
    return groups


def test_chain_order_equals_closure_size():
    for g in chain_fixtures():
        t = GroupTable.close(list(g.generators), cap=5000)
        assert PermutationGroup(g.degree, g.generators, g.gen_names).order() == t.n


# -- conjugacy classes, center, derived subgroup ---------------------------

def test_classes_abelian_c4():
    t = GroupTable.close([cyc(4, (0, 1, 2, 3))])
    classes = t.conjugacy_classes()
    assert len(classes) == 4
    assert all(len(c) == 1 for c in classes)


def test_classes_s3():
    t = GroupTable.close(S3_GENS)
    assert sorted(len(c) for c in t.conjugacy_classes()) == [1, 2, 3]


def test_classes_partition_and_divide():
    for g in chain_fixtures():
        t = GroupTable.close(list(g.generators), cap=5000)
        classes = t.conjugacy_classes()
        assert sum(len(c) for c in classes) == t.n
        assert all(t.n % len(c) == 0 for c in classes)
        seen = np.concatenate(classes)
        assert np.array_equal(np.sort(seen), np.arange(t.n))


def test_classes_table8_x16_column():
    # (C17 x C17) @ C16 with the x=16 action has 289 conjugacy classes
    from autkit import constructors as C

    t = GroupTable.from_perm_group(C.family_16p2("C16", 17, "table8x16"))
    assert t.n == 4624
    assert t.num_classes() == 289


def test_center_abelian_is_whole_group():
    t = GroupTable.close([cyc(6, (0, 1, 2, 3, 4, 5))])
    assert t.center_order() == 6


def test_center_s3_trivial():
    assert GroupTable.close(S3_GENS).center_order() == 1


def test_center_of_288_group():
    # Aut((C3 x C3) @ C16, order-8 image) is the 288-element group with C2 center
    from autkit import aut, constructors as C

    t = GroupTable.from_perm_group(C.family_16p2("C16", 3, "C8"))
    res = aut.automorphism_group(t)
    at = res.realize()
    assert at.n == 288
    assert at.center_order() == 2


def test_center_commutes_with_everything():
    for g in chain_fixtures()[:8]:
        t = GroupTable.close(list(g.generators), cap=5000)
        for z in t.center():
            for i in range(t.n):
                assert t.mul(int(z), i) == t.mul(i, int(z))


def test_derived_abelian_trivial():
    t = GroupTable.close([cyc(4, (0, 1, 2, 3))])
    assert len(t.derived_subgroup()) == 1


def test_derived_s3():
    t = GroupTable.close(S3_GENS)
    assert len(t.derived_subgroup()) == 3


def test_derived_quaternion():
    t = GroupTable.close([cyc(8, (0, 1, 2, 3), (4, 5, 6, 7)),
                          cyc(8, (0, 4, 2, 6), (1, 7, 3, 5))])
    assert t.n == 8
    assert len(t.derived_subgroup()) == 2


# -- quotients -------------------------------------------------------------

def test_quotient_by_whole_group():
    t = GroupTable.close(S3_GENS)
    q = t.quotient(range(t.n))
    assert q.n == 1


def test_quotient_c8_by_c2():
    t = GroupTable.close([cyc(8, tuple(range(8)))])
    sub = [i for i in range(8) if t.order_of(i) in (1, 2)]
    q = t.quotient(sub)
    assert q.n == 4
    assert max(q.order_of(i) for i in range(4)) == 4


def test_quotient_d4c2_gives_c2c2_image():
    # the kernel of the rank-two sign actions of D4 x C2 is its center;
    # the quotient is the C2 x C2 image the 16p^2 actions factor through
    from autkit import constructors as C

    t = GroupTable.from_perm_group(C.order16("D4xC2"))
    q = t.quotient(t.center())
    assert q.n == 4
    assert all(q.order_of(i) <= 2 for i in range(4))


def test_quotient_nonnormal_rejected():
    t = GroupTable.close(S3_GENS)
    reflection = next(i for i in range(6) if t.order_of(i) == 2)
    with pytest.raises(ValueError):
        t.quotient(t.subgroup_closure([reflection]))


def test_quotient_by_derived_is_abelian():
    for g in chain_fixtures():
        t = GroupTable.close(list(g.generators), cap=5000)
        q = t.quotient(t.derived_subgroup())
        assert q.is_abelian()


# -- fingerprints ----------------------------------------------------------

def test_fingerprint_c2():
    t = GroupTable.close([cyc(2, (0, 1))])
    f = t.fingerprint()
    assert (f.order, f.num_classes, f.center_order) == (2, 2, 2)
    assert dict(f.order_histogram) == {1: 1, 2: 1}
    assert f.derived_orders == (2, 1)


def test_fingerprint_s3():
    f = GroupTable.close(S3_GENS).fingerprint()
    assert (f.order, f.num_classes, f.center_order) == (6, 3, 1)
    assert dict(f.order_histogram) == {1: 1, 2: 3, 3: 2}
    assert f.derived_orders == (6, 3, 1)


def test_fingerprint_invariants():
    for g in chain_fixtures():
        t = GroupTable.close(list(g.generators), cap=5000)
        f = t.fingerprint()
        assert sum(v for _, v in f.order_histogram) == f.order
        assert dict(f.order_histogram)[1] == 1
        assert f.order % f.center_order == 0
        for a, b in zip(f.derived_orders, f.derived_orders[1:]):
            assert a % b == 0


def test_order_histogram_sums():
    t = GroupTable.close(S3_GENS)
    assert t.order_histogram() == {1: 1, 2: 3, 3: 2}
    assert t.exponent() == 6
