import numpy as np
import pytest

from conftest import semigroups, semigroups_up_to
from pentagon.commutative import characterizations_consistent, commutativity_characterizations
from pentagon.constructions import kac_takesaki, lyubashenko
from pentagon.enumeration import SearchFilter, enumerate_solutions
from pentagon.errors import (
    BadSigma,
    ConditionFailed,
    IdempotentsNotCentral,
    NotElementaryAbelian2Group,
    NotInvolutive,
    PreconditionFailed,
)
from pentagon.idempotent import (
    IdempotentClassificationData,
    construct_idempotent_central,
    extract_idempotent_data,
    idempotent_theta_checks,
    monoid_theta_checks,
    theta1_homomorphism_data,
)
from pentagon.involutive import (
    count_involutive,
    decompose_involutive,
    decomposition_sizes,
    ext_sigma,
    involutive_from_sizes,
    is_irretractable,
    retract,
    t_A,
    two_adic_valuation,
)
from pentagon.named import (
    clifford_monoid,
    cyclic,
    elementary_abelian,
    idempotent_example_monoid,
    left_zero,
)
from pentagon.semigroup import analyze
from pentagon.solution import classify_properties, solution_canonical_form, solutions_isomorphic


def small_solutions(n, filt=SearchFilter()):
    for S in semigroups_up_to(n, up_to_iso=True):
        yield from enumerate_solutions(S, filt)


# ----------------------------------------------------------------- involutive

def test_t_a_on_z2():
    s = t_A(cyclic(2))
    assert s.table.tolist() == [[0, 0], [1, 1]]
    assert s.theta.tolist() == [[0, 1], [1, 0]]
    assert is_irretractable(s)
    with pytest.raises(NotElementaryAbelian2Group):
        t_A(cyclic(4))


def test_ext_sigma():
    A = cyclic(2)
    s = ext_sigma(A, 2, [[0, 1], [1, 0]])
    assert s.order == 4 and classify_properties(s).involutive
    assert not is_irretractable(s)
    with pytest.raises(BadSigma):
        ext_sigma(A, 2, [[0, 0], [1, 0]])
    with pytest.raises(BadSigma):
        ext_sigma(A, 3, [[0, 1], [1, 0]])


def test_retract_of_ext_sigma_is_t_a():
    A = elementary_abelian(2)
    s = ext_sigma(A, 2, [[0, 1], [1, 0], [0, 1], [1, 0]])
    r = retract(s)
    assert solutions_isomorphic(r, t_A(A)) is not None


def test_retract_requires_involutive():
    with pytest.raises(NotInvolutive):
        retract(lyubashenko(2, [0, 0], [0, 0]))


def test_retract_is_idempotent_on_small_involutive_solutions():
    seen = 0
    for s in small_solutions(4, SearchFilter(involutive=True)):
        r = retract(s)
        assert is_irretractable(r)
        assert solution_canonical_form(retract(r))[0] == solution_canonical_form(r)[0]
        seen += 1
    assert seen > 0


def test_every_small_involutive_solution_decomposes():
    for s in small_solutions(4, SearchFilter(involutive=True)):
        d = decompose_involutive(s)
        x, a, g = d.sizes()
        assert x * a * g == s.order
        assert solutions_isomorphic(d.reassemble(), s) is not None


def test_decompose_kac_takesaki_z2():
    d = decompose_involutive(kac_takesaki(cyclic(2)))
    assert d.sizes() == (1, 1, 2)


def test_counting():
    assert [two_adic_valuation(N) for N in (1, 2, 12, 64)] == [0, 1, 2, 6]
    assert [count_involutive(N) for N in (1, 2, 3, 4, 8, 12)] == [1, 3, 1, 6, 10, 6]
    for N in range(1, 65):
        assert len(decomposition_sizes(N)) == count_involutive(N)


def test_counts_match_census_up_to_four():
    for n in range(1, 5):
        keys = {solution_canonical_form(s)[0]
                for S in semigroups(n) for s in enumerate_solutions(S, SearchFilter(involutive=True))}
        assert len(keys) == count_involutive(n)


def test_representatives_are_pairwise_distinct():
    for N in (4, 6):
        reps = [involutive_from_sizes(x, a.bit_length() - 1, g.bit_length() - 1)
                for x, a, g in decomposition_sizes(N)]
        keys = {solution_canonical_form(s)[0] for s in reps}
        assert len(keys) == len(reps)


# ----------------------------------------------------------------- idempotent

def test_monoid_identities_hold_for_every_small_solution():
    for s in small_solutions(3):
        if analyze(s.semigroup).is_monoid:
            r = monoid_theta_checks(s)
            assert r.ok, r.failures()


def test_idempotent_identities_hold():
    for s in small_solutions(3, SearchFilter(idempotent=True)):
        r = idempotent_theta_checks(s)
        assert r.ok, r.failures()
    with pytest.raises(PreconditionFailed):
        idempotent_theta_checks(kac_takesaki(cyclic(2)))


def test_three_idempotent_solutions_on_example_monoid():
    M = idempotent_example_monoid()
    sols = enumerate_solutions(M, SearchFilter(idempotent=True))
    assert len(sols) == 3
    for s in sols:
        data = extract_idempotent_data(s)
        assert construct_idempotent_central(M, data) == s
        assert theta1_homomorphism_data(s).mu.tolist() == s.theta[0].tolist()


def test_classification_conditions_are_enforced():
    M = idempotent_example_monoid()
    with pytest.raises(ConditionFailed):
        construct_idempotent_central(M, IdempotentClassificationData(np.array([1, 1, 1]), {1: [1, 1, 1]}))
    with pytest.raises(ConditionFailed):
        construct_idempotent_central(M, IdempotentClassificationData(np.array([0, 0, 0]), {0: [0, 2, 1]}))


def test_non_central_idempotents():
    from pentagon.semigroup import validate_table
    # monoid with a left zero pair: idempotents 1, 2 do not commute
    M = validate_table(3, [[0, 1, 2], [1, 1, 1], [2, 2, 2]])
    s = enumerate_solutions(M, SearchFilter(idempotent=True))[0]
    with pytest.raises(IdempotentsNotCentral):
        extract_idempotent_data(s)


# ---------------------------------------------------------------- commutative

def test_characterizations_agree_on_all_small_solutions():
    for s in small_solutions(3):
        r = commutativity_characterizations(s)
        assert characterizations_consistent(r), r.as_dict()


def test_commutative_on_monoid():
    M = clifford_monoid()
    s = kac_takesaki(M)
    r = commutativity_characterizations(s)
    assert r.facts["structured_carrier"]
    # theta = id is a constant idempotent endomorphism on a commutative monoid
    assert r.facts["cocommutative"] and r.facts["commutative"]
    assert characterizations_consistent(r)


def test_left_zero_not_structured():
    s = enumerate_solutions(left_zero(2))[0]
    assert not commutativity_characterizations(s).facts["structured_carrier"]
