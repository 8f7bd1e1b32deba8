import numpy as np
import pytest

from pentagon.constructions import (
    MATCHED_IDENTITIES,
    GroupSolutionData,
    MatchedQuadruple,
    check_matched_quadruple,
    endo_solution,
    exact_factorization_solutions,
    extract_group_data,
    group_quotient_solution,
    group_solutions,
    kac_takesaki,
    kashaev_sergeev,
    left_zero_group_solution,
    lyubashenko,
    matched_product,
    matched_product_table,
    product_solution,
)
from pentagon.enumeration import enumerate_solutions
from pentagon.errors import (
    ClosureFailed,
    CocycleFailed,
    NotExactFactorization,
    NotMatched,
    NotNormal,
    PreconditionFailed,
    SigmaConditionFailed,
)
from pentagon.named import (
    chain_monoid,
    clifford_monoid,
    cyclic,
    groups_up_to,
    klein,
    sign,
    symmetric3,
    two_element_semilattice_monoid,
)
from pentagon.semigroup import analyze, normal_subgroups
from pentagon.solution import classify_properties, opposite


def test_lyubashenko():
    s = lyubashenko(3, [0, 0, 0], [0, 0, 0])
    assert s.table.tolist() == [[0] * 3] * 3
    with pytest.raises(PreconditionFailed):
        lyubashenko(3, [0, 0, 0], [1, 1, 1])
    with pytest.raises(PreconditionFailed):
        lyubashenko(3, [1, 2, 0], [0, 1, 2])
    with pytest.raises(PreconditionFailed):
        lyubashenko(2, [0, 0], [1, 1])


def test_endo_solution_nondegenerate_only_for_identity():
    M = clifford_monoid()
    assert classify_properties(endo_solution(M, [0, 1, 2])).non_degenerate
    s = endo_solution(M, [1, 1, 2])
    assert not classify_properties(s).non_degenerate
    with pytest.raises(PreconditionFailed):
        endo_solution(M, [0, 2, 1])


def test_left_zero_group_solution():
    Z2 = cyclic(2)
    s = left_zero_group_solution(Z2, 1, [0])
    assert classify_properties(s).involutive
    s = left_zero_group_solution(Z2, 2, [1, 0])
    p = classify_properties(s)
    assert p.bijective and p.involutive
    with pytest.raises(SigmaConditionFailed):
        left_zero_group_solution(Z2, 3, [1, 2, 0])


def test_left_zero_group_involutive_iff_exponent_two_and_sigma_square_id():
    for G, exp2 in ((cyclic(2), True), (cyclic(3), False)):
        s = left_zero_group_solution(G, 2, [1, 0])
        assert classify_properties(s).involutive == exp2


def _subgroups(G):
    t = G.table
    for mask in range(1, 1 << G.order):
        H = [x for x in range(G.order) if mask >> x & 1]
        if 0 in H and all(t[a, b] in H for a in H for b in H):
            yield H


def test_exact_factorizations_give_opposite_pairs():
    seen = 0
    for name, G in groups_up_to(6).items():
        for H in _subgroups(G):
            for K in _subgroups(G):
                if len(H) * len(K) != G.order:
                    continue
                try:
                    f = exact_factorization_solutions(G, set(H), set(K))
                except NotExactFactorization:
                    continue
                seen += 1
                assert f.r_is_opposite
                assert opposite(f.s) == f.r
                exponent_two = all(G.table[x, x] == 0 for x in range(G.order))
                if not exponent_two:
                    assert not f.r_is_flip_conjugate
    assert seen > 10


def test_factorization_rejects_overlap():
    with pytest.raises(NotExactFactorization):
        exact_factorization_solutions(klein(), {0, 1}, {0, 1})


def test_kashaev_sergeev():
    S3 = symmetric3()
    pi = 1
    mu = [pi if sign(3, a) == -1 else 0 for a in range(6)]
    s = kashaev_sergeev(S3, range(6), [0] * 6, mu)
    assert s == group_quotient_solution(S3, extract_group_data(s))
    with pytest.raises(CocycleFailed):
        kashaev_sergeev(S3, range(6), mu, mu)
    with pytest.raises(ClosureFailed):
        kashaev_sergeev(cyclic(4), [1], [0] * 4, [0] * 4)


def test_group_solution_counts():
    counts = {name: len(group_solutions(G)) for name, G in groups_up_to(6).items()}
    assert counts == {"Z2": 2, "Z3": 2, "Z4": 4, "Z2xZ2": 8, "Z5": 2, "Z6": 9, "S3": 5}


def test_sign_example_on_s3():
    S3 = symmetric3()
    A3 = normal_subgroups(S3)[1]
    for pi in (1, 2, 5):
        mu = np.array([pi if sign(3, a) == -1 else 0 for a in range(6)])
        s = group_quotient_solution(S3, GroupSolutionData(A3, frozenset({0, pi}), mu))
        data = extract_group_data(s)
        assert data.K == A3 and data.R == {0, pi}


def test_group_data_rejects_non_normal():
    S3 = symmetric3()
    with pytest.raises(NotNormal):
        group_quotient_solution(S3, GroupSolutionData(frozenset({0, 1}), frozenset({0, 2, 4}), np.zeros(6)))


def test_group_solutions_match_brute_force():
    for G in groups_up_to(6).values():
        assert group_solutions(G) == set(enumerate_solutions(G))


def _quad(gamma):
    S = chain_monoid()
    T = two_element_semilattice_monoid()
    alpha = np.array([np.arange(3), gamma])
    beta = np.array([[0, 1], [0, 0], [0, 0]])
    return MatchedQuadruple(endo_solution(S, gamma), kac_takesaki(T), alpha, beta)


def test_matched_example_with_identity_and_x_to_y():
    for gamma in ([0, 1, 2], [0, 2, 2]):
        q = _quad(np.array(gamma))
        ok, violations = check_matched_quadruple(q)
        assert ok and not violations
        s = matched_product(q)
        assert np.array_equal(s.table, matched_product_table(q)[0])


def test_matched_example_fails_for_other_gammas():
    ok, violations = check_matched_quadruple(_quad(np.array([0, 0, 0])))
    assert not ok
    assert all(name in MATCHED_IDENTITIES for name, _ in violations)
    with pytest.raises(NotMatched):
        matched_product(_quad(np.array([0, 0, 0])))


def test_product_solution():
    s = product_solution(kac_takesaki(cyclic(2)), kac_takesaki(cyclic(3)))
    assert s.order == 6 and analyze(s.semigroup).is_group
    assert s == kac_takesaki(s.semigroup)
