import pytest

from autkit import modsolve

from oracles import mat_order, mat_closure


def as_mat(flat):
    a, b, c, d = flat
    return ((a, b), (c, d))


def test_primitive_root_smallest():
    assert modsolve.primitive_root(3) == 2
    assert modsolve.primitive_root(7) == 3
    assert modsolve.primitive_root(17) == 3
    assert modsolve.primitive_root(23) == 5
    assert modsolve.primitive_root(41) == 6
    # cross-check: every smaller candidate has smaller order
    for p in (7, 17, 23):
        g = modsolve.primitive_root(p)
        for h in range(2, g):
            assert modsolve.element_order_mod(h, p) < p - 1


def test_primitive_roots_count():
    # phi(p-1) primitive roots
    assert len(modsolve.primitive_roots(7)) == 2
    assert len(modsolve.primitive_roots(17)) == 8
    assert len(modsolve.primitive_roots(23)) == 10


def test_roots_of_unity_counts():
    assert modsolve.roots_of_unity(17, 16).solutions == tuple(range(1, 17))
    assert len(modsolve.roots_of_unity(17, 4)) == 4
    assert len(modsolve.roots_of_unity(7, 16)) == 2  # gcd(16, 6)
    assert modsolve.roots_of_unity(13, 3).solutions == (1, 3, 9)


def test_holomorph_exponents_conventions():
    neg = modsolve.holomorph_exponents(7, "negated")
    plain = modsolve.holomorph_exponents(7, "plain")
    # primitive roots mod 7 are {3, 5}
    assert plain.solutions == (3, 5)
    assert neg.solutions == (2, 4)
    # published exemplar exponents all follow the negated convention
    for p, x in [(3, 1), (5, 3), (7, 2), (11, 5), (13, 2), (17, 6)]:
        assert x in modsolve.holomorph_exponents(p, "negated")


class TestActionParams:
    def test_d8_params(self):
        # pinned: p=7 gives x=2 (the canonical smallest)
        r = modsolve.action_params(7, "D8")
        assert r.solutions == (2, 5)
        for x in r:
            assert mat_order(as_mat((x, x, (-x) % 7, x)), 7) == 8

    def test_d8_incompatible(self):
        r = modsolve.action_params(3, "D8")
        assert r.solutions == ()
        assert "quadratic residue" in r.note

    def test_qd8_params(self):
        r = modsolve.action_params(3, "QD8")
        assert r.solutions == (1, 2)
        assert mat_order(as_mat((1, 1, 2, 1)), 3) == 8
        r17 = modsolve.action_params(17, "QD8")
        assert len(r17) == 2
        assert modsolve.action_params(7, "QD8").solutions == ()

    def test_q4_pairs(self):
        r = modsolve.action_params(7, "Q4pair")
        assert (2, 3) in r
        for a, b in r:
            assert (a * a + b * b) % 7 == 6
            assert mat_order(as_mat((a, b, b, (-a) % 7)), 7) == 4

    def test_solution_sets_sorted(self):
        for kind in ("D8", "QD8", "Q4pair"):
            r = modsolve.action_params(17, kind)
            assert list(r.solutions) == sorted(r.solutions)


class TestC16Params:
    def test_plus_branch_primes(self):
        r7 = modsolve.c16_action_params(7)
        assert (1, 3) in r7
        assert all(x == 1 for x, _ in r7)
        r23 = modsolve.c16_action_params(23)
        assert (1, 4) in r23

    def test_minus_branch_primes_with_rejection_note(self):
        r31 = modsolve.c16_action_params(31)
        assert (30, 5) in r31  # x = -1 mod 31
        assert "rejected" in r31.note
        r47 = modsolve.c16_action_params(47)
        assert (46, 3) in r47

    def test_order8_family(self):
        r41 = modsolve.c16_action_params(41)
        assert (3, 0) in r41
        assert all(y == 0 for _, y in r41)

    def test_all_solutions_have_matrix_order_16(self):
        for p in (7, 23, 31, 41, 47):
            for x, y in modsolve.c16_action_params(p):
                assert mat_order(((0, 1), (x, y)), p) == 16

    def test_out_of_scope_primes(self):
        assert modsolve.c16_action_params(17).solutions == ()
        assert "diagonal" in modsolve.c16_action_params(17).note
        assert modsolve.c16_action_params(3).solutions == ()
        assert modsolve.c16_action_params(5).solutions == ()


class TestIteratedRadical:
    def test_depth3_p7(self):
        r = modsolve.iterated_radical_roots(7, 3)
        assert r.solutions == (1, 3, 4, 6)
        assert 3 in r and 4 in r

    def test_depth4(self):
        assert modsolve.iterated_radical_roots(47, 4).solutions == \
            (1, 4, 11, 18, 29, 36, 43, 46)
        assert modsolve.iterated_radical_roots(79, 4).solutions == \
            (8, 13, 17, 24, 55, 62, 66, 71)

    def test_symmetry(self):
        for p, n in [(7, 3), (47, 4), (79, 4), (31, 5)]:
            r = modsolve.iterated_radical_roots(p, n)
            assert all((p - x) in r for x in r)

    def test_depth2_is_sqrt_minus2(self):
        r = modsolve.iterated_radical_roots(3, 2)
        assert r.solutions == (1, 2)
        for x in modsolve.iterated_radical_roots(11, 2):
            assert x * x % 11 == 9

    def test_congruence_precondition(self):
        r = modsolve.iterated_radical_roots(17, 3)
        assert r.solutions == ()
        assert "mod 2^3" in r.note

    def test_matrix_order_audit(self):
        # each root gives an order-32 quasidihedral generator at depth 4
        for x in modsolve.iterated_radical_roots(47, 4):
            assert mat_order(((0, 1), (1, x)), 47) == 32


COXETER_PAIRS = {
    7: ((1, 5), (2, 6)),
    23: ((7, 3), (20, 16)),
    31: ((12, 5), (26, 19)),
    47: ((18, 26), (20, 14), (21, 29), (33, 27)),
    71: ((7, 20), (51, 64)),
    103: (),
    127: (),
    167: ((54, 68), (99, 113)),
}


class TestCoxeter234:
    @pytest.mark.parametrize("p", sorted(COXETER_PAIRS))
    def test_offdiag_pairs(self, p):
        r = modsolve.coxeter234_search(p, "offdiag-pair")
        assert r.solutions == COXETER_PAIRS[p]

    def test_offdiag_closure_is_order_48(self):
        # independent closure via the naive oracle
        a = ((6, 1), (6, 0))
        b = ((1, 1), (5, 6))
        assert len(mat_closure([a, b], 7)) == 48

    def test_pair_symmetry(self):
        for p in (7, 23, 31, 47):
            sols = set(modsolve.coxeter234_search(p, "offdiag-pair").solutions)
            assert all(((p - y) % p, (p - x) % p) in sols for x, y in sols)

    def test_quadruple_form_covers_resistant_prime(self):
        r = modsolve.coxeter234_search(103, "general-quadruple")
        assert (99, 99, 30, 4) in r
        assert (43, 43, 48, 60) in r
        v, x, y, w = r.solutions[0]
        assert (v + w) % 103 == 0
        assert (v * w - x * y) % 103 == 1
        assert len(mat_closure([((102, 1), (102, 0)), ((v, x), (y, w))], 103)) == 48

    def test_times_cq_counts(self):
        assert len(modsolve.coxeter234_search(7, "times-cq-pair")) == 4
        assert len(modsolve.coxeter234_search(23, "times-cq-pair")) == 22
        assert len(modsolve.coxeter234_search(31, "times-cq-pair")) == 16

    def test_times_cq_p7_solutions(self):
        r = modsolve.coxeter234_search(7, "times-cq-pair")
        assert r.solutions == ((1, 4), (3, 3), (3, 6), (4, 4))
        # closure has order 48 * (p-1)/2 = 144
        assert len(mat_closure([((6, 1), (6, 0)), ((1, 1), (4, 6))], 7)) == 144


def test_solution_set_as_dict():
    r = modsolve.action_params(7, "D8")
    d = r.as_dict()
    assert d["p"] == 7 and d["solutions"] == [2, 5]
    rq = modsolve.action_params(7, "Q4pair")
    assert rq.as_dict()["solutions"][0] == [2, 3]


def test_rejects_composite_p():
    with pytest.raises(ValueError):
        modsolve.primitive_root(15)
    with pytest.raises(ValueError):
        modsolve.action_params(9, "D8")
