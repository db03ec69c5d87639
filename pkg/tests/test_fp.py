"""Word evaluation, relator checking, and Todd-Coxeter enumeration tests.

The fixed presentations here are the toolkit's catalog presentations plus
the handful of explicit permutation representations shipped with the
reference data (the complete group of order 144 on 9 points, the order-576
group on 14 points).
"""

import random

import pytest

from autkit import fp
from autkit.fp import Presentation, CosetTable, WordError
from autkit.perm import Permutation, parse_cycles


def cyc(degree, *cycles):
    return Permutation.from_cycles(degree, list(cycles))


# -- word evaluation -------------------------------------------------------

def test_empty_word_is_identity():
    w = fp.parse_word("", ["a"])
    assert w.evaluate({"a": cyc(3, (0, 1, 2))}).is_identity()


def test_conjugation_expansion():
    a = cyc(3, (0, 1, 2))
    b = cyc(3, (0, 1))
    got = fp.evaluate_word("a^b", {"a": a, "b": b})
    assert got == cyc(3, (0, 2, 1))
    assert got == b.inverse() * a * b


def test_commutator_expansion():
    a = cyc(4, (0, 1, 2, 3))
    b = cyc(4, (0, 1))
    got = fp.evaluate_word("(a,b)", {"a": a, "b": b})
    assert got == a.inverse() * b.inverse() * a * b


def test_inversion_relator_of_16p_group():
    # x^a*x = 1 in Cp @ C16 with the inverting action
    from autkit import constructors as C

    g, _ = C.family_16p("C16", 3, "C2", "a")
    images = dict(zip(g.gen_names, g.generators))
    assert "x" in images and "a" in images
    assert fp.evaluate_word("x^a*x", images).is_identity()


def test_unmapped_symbol_rejected():
    with pytest.raises(WordError):
        fp.evaluate_word("a*b", {"a": cyc(2, (0, 1))})


def test_integer_exponents():
    a = cyc(8, tuple(range(8)))
    assert fp.evaluate_word("a^-3", {"a": a}) == a.inverse() ** 3
    assert fp.evaluate_word("a^(-p)", {"a": a}, params={"p": 3}) == a.inverse() ** 3
    assert fp.evaluate_word("a^(p^2-1)", {"a": a}, params={"p": 3}) == a ** 8


def test_evaluate_word_is_homomorphic_in_each_symbol():
    # substituting a product for a symbol commutes with evaluation
    rng = random.Random(11)
    for _ in range(20):
        imgs = {}
        for name in ("x", "y", "b"):
            images = list(range(6))
            rng.shuffle(images)
            imgs[name] = Permutation(images)
        direct = fp.evaluate_word("a^2*b*a^-1", {"a": imgs["x"] * imgs["y"], "b": imgs["b"]})
        substituted = fp.evaluate_word("(x*y)^2*b*(x*y)^-1", imgs)
        assert direct == substituted


# -- relator checking ------------------------------------------------------

def test_check_relators_qd8():
    from autkit import constructors as C

    pres = C.order16_presentation("QD8")
    g = C.order16("QD8")
    assert fp.check_relators(pres, dict(zip(g.gen_names, g.generators)))


def test_check_relators_rejects_bad_images():
    from autkit import constructors as C

    pres = C.order16_presentation("QD8")
    g = C.order16("QD8")
    images = dict(zip(g.gen_names, g.generators))
    images["b"] = images["a"]
    assert not fp.check_relators(pres, images)


CG144_PRESENTATION = (
    "a,b,p,q | a^8 ; b^2 ; a^b*a^5 ; p^3 ; q^3 ; (p,q) ; "
    "p^a*q*p^-1 ; q^a*q^-1*p^-1 ; (p,b) ; q^b*q"
)

CG144_PERM_GENS = {
    "a": parse_cycles("(2,9,4,6,3,7,5,8)", 9),
    "b": parse_cycles("(4,5)(6,9)(7,8)", 9),
    "p": parse_cycles("(1,3,2)(4,7,6)(5,8,9)", 9),
    "q": parse_cycles("(1,5,4)(2,9,6)(3,8,7)", 9),
}


def test_check_relators_144_permutation_rep():
    pres = Presentation.parse(CG144_PRESENTATION)
    assert fp.check_relators(pres, CG144_PERM_GENS)


def test_144_permutation_rep_generates_the_full_group():
    from autkit.table import GroupTable

    t = GroupTable.close(list(CG144_PERM_GENS.values()))
    assert t.n == 144
    assert t.center_order() == 1


# -- Todd-Coxeter ----------------------------------------------------------

def test_tc_cyclic_16():
    pres = Presentation.parse("a | a^16")
    ct = fp.todd_coxeter(pres)
    assert ct.index() == 16


def test_tc_d8_presentation():
    pres = Presentation.parse("a,b | a^8 ; b^2 ; a^b*a")
    assert fp.todd_coxeter(pres).index() == 16


def test_tc_144_presentation():
    pres = Presentation.parse(CG144_PRESENTATION)
    assert fp.todd_coxeter(pres).index() == 144


def test_tc_regular_rep_matches_index():
    pres = Presentation.parse("a,b | a^5 ; b^4 ; a^b*a^-2")
    ct = fp.todd_coxeter(pres)
    g = ct.perm_group()
    assert ct.index() == 20
    assert g.degree == 20
    assert g.order() == 20


def test_tc_nontrivial_subgroup():
    pres = Presentation.parse("a,b | a^8 ; b^2 ; a^b*a")
    assert fp.todd_coxeter(pres, subgroup=["b"]).index() == 8
    assert fp.todd_coxeter(pres, subgroup=["a"]).index() == 2


def test_tc_overflow_signalled():
    pres = Presentation.parse("a,b | a^8 ; b^2 ; a^b*a")
    with pytest.raises(fp.EnumerationError):
        fp.todd_coxeter(pres, max_cosets=5)


def test_tc_columns_are_bijections():
    for text in ("a,b | a^8 ; b^2 ; a^b*a",
                 "a,b | a^4 ; b^4 ; a^2*b^-2 ; a^b*a",
                 CG144_PRESENTATION):
        g = fp.todd_coxeter(Presentation.parse(text)).perm_group()
        n = g.degree
        for col in g.generators:
            assert sorted(col.images) == list(range(n))


# -- the order-288 relator variants ----------------------------------------

AF288_P3 = (
    "a,b,c,d | a^3 ; b^3 ; (a,b) ; c^8 ; a^c*b ; b^c*a*b ; d^4 ; "
    "a^d*a*b^-1 ; b^d*b^-1*a^-1 ; c^d*a*c^-3"
)

AF288_GENERAL = (
    "a,b,c,d | a^p ; b^p ; c^(p^2-1) ; a^c*b ; b^c*a^x*b^(x^2) ; d^4 ; "
    "(a,d) ; b^d*(c*a^x*c^-1)^-1 ; c^d*c^(-p)"
)


def test_288_relator_variants_give_same_group():
    # at p=3 the last relator carries an extra letter in one printed form;
    # both close to the same order-288 group
    from autkit import aut

    t1 = fp.regular_rep(Presentation.parse(AF288_P3))
    pres2 = Presentation.parse(AF288_GENERAL).with_params(p=3, x=1)
    t2 = fp.regular_rep(pres2)
    assert t1.order() == t2.order() == 288
    assert aut.is_isomorphic(t1, t2) is not None


def test_288_presentation_matches_computed_aut():
    from autkit import aut, constructors as C
    from autkit.table import GroupTable

    t = GroupTable.from_perm_group(C.family_16p2("C16", 3, "C8"))
    res = aut.automorphism_group(t)
    assert fp.validate_presentation(Presentation.parse(AF288_P3), res.realize())


# -- the order-576 fixture -------------------------------------------------

G576_PRESENTATION = (
    "a,b,c,d | a^p ; b^q ; a^b*a^x ; c^2 ; (a,c) ; (b,c) ; d^4 ; (a,d^2) ; "
    "(b,d^2) ; (c,d^2) ; (a*d)^2*(a^-1*d^-1)^2 ; "
    "a*d*b*d^-1*a^-1*d^-1*b^-1*d ; a*d*c*d^-1*a^-1*d^-1*c*d ; "
    "(b*d)^2*((d*b)^-1)^2 ; b*d*c*d^-1*b^-1*d^-1*c*d ; (c*d)^2*(c*d^-1)^2"
)

G576_PERM_GENS = {
    "a": parse_cycles("(1,2,3)", 14),
    "b": parse_cycles("(2,3)", 14),
    "c": parse_cycles("(4,5)", 14),
    "d": parse_cycles("(1,6)(2,7)(3,8)(4,9)(5,10)(11,12,13,14)", 14),
}


def test_576_presentation_order():
    pres = Presentation.parse(G576_PRESENTATION).with_params(p=3, q=2, x=1)
    assert fp.presentation_order(pres) == 576


def test_576_permutation_rep():
    from autkit.table import GroupTable

    pres = Presentation.parse(G576_PRESENTATION).with_params(p=3, q=2, x=1)
    assert fp.check_relators(pres, G576_PERM_GENS)
    t = GroupTable.close(list(G576_PERM_GENS.values()))
    assert t.n == 576
    assert t.num_classes() == 54
    assert t.center_order() == 4


def test_576_presentation_matches_computed_aut():
    from autkit import aut, constructors as C
    from autkit.table import GroupTable

    t = GroupTable.from_perm_group(C.family_16p2("C8xC2", 3, "ab_b"))
    res = aut.automorphism_group(t)
    pres = Presentation.parse(G576_PRESENTATION).with_params(p=3, q=2, x=1)
    assert fp.validate_presentation(pres, res.realize())


# -- validate_presentation -------------------------------------------------

def test_validate_c4xc4():
    from autkit import constructors as C

    pres = C.order16_presentation("C4xC4")
    assert fp.validate_presentation(pres, C.order16("C4xC4"))


def test_validate_rejects_wrong_group():
    from autkit import constructors as C

    d8 = C.order16_presentation("D8")
    assert not fp.validate_presentation(d8, C.order16("Q4"))


def test_validate_whole_order16_catalog():
    from autkit import constructors as C

    for name in C.ORDER16_NAMES:
        assert fp.validate_presentation(C.order16_presentation(name),
                                        C.order16(name)), name


def test_tc_order_equals_build_order_for_catalog():
    from autkit import constructors as C

    for name in C.ORDER16_NAMES:
        pres = C.order16_presentation(name)
        assert fp.presentation_order(pres) == 16, name


# -- presentation plumbing -------------------------------------------------

def test_presentation_round_trip():
    pres = Presentation.parse("a,b | a^8 ; b^2 ; a^b*a^-3")
    again = Presentation.parse(pres.text())
    assert again.alphabet == pres.alphabet
    assert [str(r) for r in again.relators()] == [str(r) for r in pres.relators()]


def test_presentation_params_required():
    pres = Presentation.parse(AF288_GENERAL)
    with pytest.raises(WordError):
        pres.relators()
    ok = pres.with_params(p=3, x=1)
    assert len(ok.relators()) == 9


def test_word_inverse_and_product():
    w = fp.parse_word("a^2*b^-1", ["a", "b"])
    winv = w.inverse()
    a = cyc(6, (0, 1, 2, 3, 4, 5))
    b = cyc(6, (0, 3), (1, 4))
    assert w.evaluate({"a": a, "b": b}) * winv.evaluate({"a": a, "b": b}) \
        == Permutation.identity(6)
