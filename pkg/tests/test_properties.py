"""Property checks over small carriers, exhaustive where cheap and sampled otherwise."""
import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import semigroups, semigroups_up_to
from pentagon.clifford import (
    clifford_structure,
    congruence_from_pair,
    construct_e_invariant,
    default_epsilon,
    extract_e_invariant_data,
    glue_e_fixed,
    invariance_flags,
    kernel_and_trace,
)
from pentagon.constructions import (
    MatchedQuadruple,
    exact_factorization_solutions,
    kac_takesaki,
    matched_product,
)
from pentagon.enumeration import SearchFilter, census, enumerate_solutions, write_catalog
from pentagon.errors import NotExactFactorization, PentagonError
from pentagon.idempotent import extract_idempotent_data, monoid_theta_checks
from pentagon.involutive import decompose_involutive, ext_sigma, retract
from pentagon.named import elementary_abelian, groups_up_to, trivial
from pentagon.semigroup import (
    analyze,
    canonical_form,
    enumerate_congruences,
    isomorphism,
    relabel,
)
from pentagon.serialize import load, solution_from_json
from pentagon.solution import (
    classify_properties,
    opposite,
    relabel_solution,
    solution_canonical_form,
    solutions_isomorphic,
)

ALL3 = semigroups_up_to(3, up_to_iso=False)


def solutions(n, filt=SearchFilter()):
    return [s for S in semigroups(n) for s in enumerate_solutions(S, filt)]


# ------------------------------------------------------------------ semigroups

@given(st.sampled_from(ALL3), st.data())
def test_canonical_form_is_idempotent(S, data):
    perm = data.draw(st.permutations(range(S.order)))
    c = canonical_form(relabel(S, perm))[0]
    assert canonical_form(c)[0] == c == canonical_form(S)[0]


@given(st.sampled_from(ALL3))
def test_analyze_flags_are_consistent(S):
    f = analyze(S)
    if f.is_group:
        assert f.is_monoid and f.is_cancellative and f.is_inverse and f.is_clifford
    if f.is_clifford:
        assert f.is_inverse
    t = S.table
    assert all(t[t[x, y], z] == t[x, t[y, z]] for x, y, z in itertools.product(range(S.order), repeat=3))


def test_canonical_classes_match_pairwise_isomorphism_oracle():
    for n in (1, 2, 3):
        labeled = semigroups(n, up_to_iso=False)
        classes = []
        for S in labeled:
            if not any(isomorphism(S, C) is not None for C in classes):
                classes.append(S)
        assert len(classes) == len(semigroups(n))


# -------------------------------------------------------------------- solutions

def _square(s):
    n = s.order
    x, y = np.divmod(np.arange(n * n), n)
    return s.table[x, y], s.theta[x, y]


def test_involutive_flag_is_s_squared_identity():
    for n in (1, 2, 3):
        for s in solutions(n):
            n_ = s.order
            a, b = _square(s)
            back = s.table[a, b], s.theta[a, b]
            x, y = np.divmod(np.arange(n_ * n_), n_)
            assert classify_properties(s).involutive == (np.array_equal(back[0], x) and np.array_equal(back[1], y))


def test_opposite_is_an_involution():
    seen = 0
    for n in (1, 2, 3):
        for s in solutions(n, SearchFilter(bijective=True)):
            assert opposite(opposite(s)) == s
            seen += 1
    assert seen > 0


@given(st.data())
def test_isomorphism_is_an_equivalence(data):
    pool = solutions(3)
    a = data.draw(st.sampled_from(pool))
    perm = data.draw(st.permutations(range(3)))
    b = relabel_solution(a, perm)
    c = relabel_solution(b, data.draw(st.permutations(range(3))))
    assert solutions_isomorphic(a, a) is not None
    assert (solutions_isomorphic(a, b) is None) == (solutions_isomorphic(b, a) is None)
    assert solutions_isomorphic(a, c) is not None
    d = data.draw(st.sampled_from(pool))
    same = solution_canonical_form(a)[0] == solution_canonical_form(d)[0]
    assert same == (solutions_isomorphic(a, d) is not None)


def test_monoid_identities_on_every_small_monoid_solution():
    for n in (1, 2, 3):
        for S in semigroups(n):
            if analyze(S).is_monoid:
                for s in enumerate_solutions(S):
                    assert monoid_theta_checks(s).ok


# ---------------------------------------------------------------- constructions

def test_only_bijective_group_solution_is_kac_takesaki():
    for G in groups_up_to(6).values():
        assert enumerate_solutions(G, SearchFilter(bijective=True)) == [kac_takesaki(G)]


def test_factorization_r_lives_on_a_left_group():
    for G in groups_up_to(6).values():
        n = G.order
        subsets = [set(c) | {0} for k in range(n) for c in itertools.combinations(range(1, n), k)]
        for H in subsets:
            for K in subsets:
                try:
                    f = exact_factorization_solutions(G, H, K)
                except (NotExactFactorization, PentagonError):
                    continue
                assert analyze(f.r.semigroup).is_left_group


def test_matched_product_with_trivial_partner():
    T = trivial()
    for s in solutions(2) + solutions(3)[:40]:
        n = s.order
        q = MatchedQuadruple(s, kac_takesaki(T), np.arange(n)[None, :], np.zeros((n, 1), dtype=np.int64))
        assert solutions_isomorphic(matched_product(q), s) is not None


# --------------------------------------------------------------------- clifford

def test_congruence_pair_round_trips_on_inverse_semigroups():
    for S in semigroups_up_to(4):
        if analyze(S).is_inverse:
            for rho in enumerate_congruences(S):
                pair = kernel_and_trace(S, rho)
                assert congruence_from_pair(S, pair) == rho
                assert kernel_and_trace(S, congruence_from_pair(S, pair)) == pair


def test_construct_then_extract_gives_same_congruence():
    for S in semigroups_up_to(4):
        if not analyze(S).is_clifford:
            continue
        for s in enumerate_solutions(S, SearchFilter(e_invariant=True)):
            data = extract_e_invariant_data(s)
            for e, R in data.representatives.items():
                t = construct_e_invariant(S, data.rho, R)
                assert invariance_flags(t)[0]
                assert extract_e_invariant_data(t).rho == data.rho


def test_glued_solutions_are_e_fixed():
    for S in semigroups_up_to(4):
        if not analyze(S).is_clifford:
            continue
        eps = default_epsilon(clifford_structure(S))
        for s in enumerate_solutions(S, SearchFilter(e_fixed=True)):
            try:
                g = glue_e_fixed(S, {e: s.theta for e in analyze(S).idempotents}, eps)
            except PentagonError:
                continue
            assert invariance_flags(g)[1]


# ------------------------------------------------------------------ involutive

@pytest.mark.parametrize("rank, x_size", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_ext_sigma_reassembles(rank, x_size):
    A = elementary_abelian(rank)
    rng = np.random.default_rng(rank * 10 + x_size)
    for _ in range(4):
        sigma = np.array([np.arange(x_size)] + [rng.permutation(x_size) for _ in range(A.order - 1)])
        s = ext_sigma(A, x_size, sigma)
        assert classify_properties(s).involutive
        d = decompose_involutive(s)
        assert d.x_size == x_size and d.A.order == A.order
        assert solutions_isomorphic(d.reassemble(), s) is not None


def test_retract_is_idempotent_operator():
    for n in range(1, 5):
        for s in solutions(n, SearchFilter(involutive=True)):
            r = retract(s)
            assert retract(r) == r


# -------------------------------------------------------- idempotent / cocommutative

def test_only_cocommutative_monoid_solution_is_identity_theta():
    for S in semigroups_up_to(4):
        if analyze(S).is_monoid:
            sols = enumerate_solutions(S, SearchFilter(cocommutative=True))
            ident = np.tile(np.arange(S.order), (S.order, 1))
            assert [s.theta.tolist() for s in sols] == [ident.tolist()]


def test_idempotent_round_trip_on_central_monoids():
    count = 0
    for S in semigroups_up_to(4):
        f = analyze(S)
        if not f.is_monoid:
            continue
        t = S.table
        if any(not np.array_equal(t[e], t[:, e]) for e in f.idempotents):
            continue
        for s in enumerate_solutions(S, SearchFilter(idempotent=True)):
            extract_idempotent_data(s)
            count += 1
    assert count == 96


# ------------------------------------------------------------------- catalog

def test_catalog_entries_reverify_with_flags(tmp_path):
    filt = SearchFilter(involutive=True)
    rep = census(4, filt)
    doc = write_catalog(rep, tmp_path)
    for entry in doc["catalog"]:
        raw = load(tmp_path / entry["file"])
        s = solution_from_json(raw)
        props = classify_properties(s)
        assert props.involutive
        assert raw["properties"] == props.as_dict()
