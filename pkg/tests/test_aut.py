"""Automorphism engine tests: brute-force oracle agreement on tiny groups,
frozen orders for standard families, realization, isomorphism certificates,
towers, and generator-image search."""

import numpy as np
import pytest

from autkit import aut, fp
from autkit.perm import Permutation
from autkit.table import GroupTable
from autkit.matgroups import MatrixGroup, gl_order

from oracles import naive_automorphism_count


def from_cycles(degree, *gen_cycles):
    gens = [Permutation.from_cycles(degree, list(cs)) for cs in gen_cycles]
    return GroupTable.close(gens)


def regular(spec: str) -> GroupTable:
    pres = fp.Presentation.parse(spec)
    return GroupTable.close(list(fp.regular_rep(pres).generators))


def tiny_groups():
    # name -> (table, |Aut| frozen from the naive oracle)
    return {
        "C4": (from_cycles(4, [(0, 1, 2, 3)]), 2),
        "V4": (from_cycles(4, [(0, 1), (2, 3)], [(0, 2), (1, 3)]), 6),
        "S3": (from_cycles(3, [(0, 1, 2)], [(0, 1)]), 6),
        "C6": (from_cycles(6, [(0, 1, 2, 3, 4, 5)]), 2),
        "D4": (from_cycles(4, [(0, 1, 2, 3)], [(1, 3)]), 8),
        "C2xC4": (from_cycles(6, [(0, 1)], [(2, 3, 4, 5)]), 8),
        "Q8": (from_cycles(8, [(0, 1, 2, 3), (4, 5, 6, 7)],
                           [(0, 4, 2, 6), (1, 7, 3, 5)]), 24),
        "C3xC3": (from_cycles(6, [(0, 1, 2)], [(3, 4, 5)]), 48),
        "A4": (from_cycles(4, [(0, 1, 2)], [(1, 2, 3)]), 24),
        "D6": (from_cycles(6, [(0, 1, 2, 3, 4, 5)], [(1, 5), (2, 4)]), 12),
        "Dic3": (regular("a,b | a^6 ; b^2*a^-3 ; a^b*a"), 12),
    }


def test_oracle_agreement_on_tiny_groups():
    for name, (t, _) in tiny_groups().items():
        want = naive_automorphism_count([t.perm(i).images for i in range(t.n)])
        got = aut.automorphism_group(t).order()
        assert got == want, name


def test_frozen_aut_orders():
    for name, (t, order) in tiny_groups().items():
        assert aut.automorphism_group(t).order() == order, name


def test_elementary_abelian_gives_general_linear_order():
    e8 = from_cycles(6, [(0, 1)], [(2, 3)], [(4, 5)])
    assert aut.automorphism_group(e8).order() == gl_order(3, 2) == 168
    c3c3 = from_cycles(6, [(0, 1, 2)], [(3, 4, 5)])
    assert aut.automorphism_group(c3c3).order() == gl_order(2, 3) == 48


def test_trivial_and_near_trivial():
    t1 = GroupTable.close([])
    assert aut.automorphism_group(t1).order() == 1
    c2 = from_cycles(2, [(0, 1)])
    assert aut.automorphism_group(c2).order() == 1


def test_orbit_size_product_and_inner_divisibility():
    for name, (t, _) in tiny_groups().items():
        res = aut.automorphism_group(t)
        assert res.order() == int(np.prod(res.orbit_sizes)), name
        assert res.order() % res.inner_order == 0, name
        assert res.outer_order * res.inner_order == res.order(), name


def test_inner_automorphisms_and_completeness():
    s3 = tiny_groups()["S3"][0]
    inn = aut.inner_automorphisms(s3)
    assert inn.cached_order == 6
    assert aut.is_complete(s3)
    res = aut.automorphism_group(s3)
    assert res.complete and res.inner_order == 6

    d4 = tiny_groups()["D4"][0]
    assert not aut.is_complete(d4)
    res = aut.automorphism_group(d4)
    assert res.inner_order == 4 and res.order() == 8

    q8 = tiny_groups()["Q8"][0]
    res = aut.automorphism_group(q8)
    assert res.inner_order == 4 and res.order() == 24 and not res.complete


def test_abelian_has_trivial_inner():
    for name in ("C4", "V4", "C6", "C2xC4", "C3xC3"):
        t = tiny_groups()[name][0]
        assert aut.inner_automorphisms(t).cached_order == 1


def test_realize_matches_known_group():
    # Aut(C3 x C3) is the full 2x2 linear group over GF(3)
    t = tiny_groups()["C3xC3"][0]
    realized = aut.automorphism_group(t).realize()
    assert realized.n == 48
    gl23 = MatrixGroup.from_rows([[[1, 1], [0, 1]], [[0, 1], [1, 0]]], 3)
    assert gl23.order() == 48
    assert aut.is_isomorphic(realized, gl23.table()) is not None


def test_realize_small_aut():
    t = tiny_groups()["C6"][0]
    realized = aut.automorphism_group(t).realize()
    assert realized.n == 2
    assert realized.element_orders().tolist().count(2) == 1


def test_explicit_generator_arguments():
    t = tiny_groups()["D4"][0]
    by_index = aut.automorphism_group(t, gens=[1, 4])
    by_perm = aut.automorphism_group(
        t, gens=[t.perm(1), t.perm(4)])
    assert by_index.order() == by_perm.order() == 8
    with pytest.raises(ValueError):
        aut.automorphism_group(t, gens=[1])  # <r> is proper in D4


def test_low_relator_budget_still_correct():
    # leaf verification makes correctness independent of relator quality
    for name in ("D4", "Q8", "A4"):
        t, order = tiny_groups()[name]
        assert aut.automorphism_group(t, relator_limit=2).order() == order


def test_is_isomorphic_accepts_and_certifies():
    nat = tiny_groups()["D6"][0]
    reg = regular("a,b | a^6 ; b^2 ; a^b*a")
    cert = aut.is_isomorphic(reg, nat)
    assert cert is not None
    # certificate entries are nat-element indices for reg's generators;
    # they must generate nat and preserve orders
    orders = nat.element_orders()
    sub = nat.subgroup_closure(list(cert))
    assert sub.size == nat.n
    for gi, image in zip(reg.generator_indices(), cert):
        assert reg.order_of(gi) == orders[image]


def test_is_isomorphic_rejects():
    groups = tiny_groups()
    assert aut.is_isomorphic(groups["C4"][0], groups["V4"][0]) is None
    assert aut.is_isomorphic(groups["D4"][0], groups["Q8"][0]) is None
    assert aut.is_isomorphic(groups["S3"][0], groups["C6"][0]) is None
    assert aut.is_isomorphic(groups["S3"][0], groups["D4"][0]) is None


def test_is_isomorphic_self():
    for name in ("S3", "D4", "Q8", "A4"):
        t = tiny_groups()[name][0]
        assert aut.is_isomorphic(t, t) is not None


def test_aut_tower_terminates_at_complete_group():
    # Q8 -> S4, and S4 is complete so the tower stabilizes there
    res = aut.aut_tower(tiny_groups()["Q8"][0])
    assert res.orders() == [8, 24]
    assert res.terminated and not res.truncated
    assert res.steps[-1].complete

    res = aut.aut_tower(tiny_groups()["S3"][0])
    assert res.orders() == [6] and res.terminated

    res = aut.aut_tower(from_cycles(3, [(0, 1, 2)]))
    assert res.orders() == [3, 2, 1] and res.terminated


def test_aut_tower_truncation():
    res = aut.aut_tower(tiny_groups()["D4"][0], max_steps=3)
    assert res.orders() == [8, 8, 8]
    assert res.truncated and not res.terminated

    res = aut.aut_tower(tiny_groups()["Q8"][0], max_order=10)
    assert res.orders() == [8, 24]
    assert res.truncated
    assert res.steps[-1].fingerprint is None  # order-only step


def test_tower_as_dict_shape():
    d = aut.aut_tower(tiny_groups()["S3"][0]).as_dict()
    assert d["terminated"] is True
    assert d["steps"][0]["order"] == 6


def test_find_generator_images():
    d4 = tiny_groups()["D4"][0]
    pres = fp.Presentation.parse("a,b | a^4 ; b^2 ; a^b*a")
    images = aut.find_generator_images(pres, d4)
    assert images is not None
    orders = d4.element_orders()
    assert orders[images["a"]] == 4 and orders[images["b"]] == 2

    # quaternion relations have no solution in D4
    qpres = fp.Presentation.parse("a,b | a^4 ; b^2*a^-2 ; a^b*a")
    assert aut.find_generator_images(qpres, d4) is None


def test_result_as_dict():
    d = aut.automorphism_group(tiny_groups()["Q8"][0]).as_dict()
    assert d["order"] == 24
    assert d["innerOrder"] == 4
    assert d["outerOrder"] == 6
    assert d["complete"] is False
