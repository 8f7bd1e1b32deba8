import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from conftest import semigroups
from pentagon.enumeration import (
    SearchFilter,
    census,
    census_labeled,
    enumerate_semigroups,
    enumerate_solutions,
    semigroup_automorphism_count,
    write_catalog,
)
from pentagon.errors import OrderTooLarge, PreconditionFailed
from pentagon.named import cyclic, left_zero
from pentagon.semigroup import relabel
from pentagon.serialize import load, solution_from_json
from pentagon.solution import classify_properties, pentagon_direct_check


def test_semigroup_counts():
    assert [len(enumerate_semigroups(n)) for n in (1, 2, 3)] == [1, 8, 113]
    assert [len(enumerate_semigroups(n, up_to_iso=True)) for n in (1, 2, 3)] == [1, 5, 24]


def test_order_limits():
    with pytest.raises(OrderTooLarge):
        enumerate_semigroups(5)
    with pytest.raises(OrderTooLarge):
        census(4)
    with pytest.raises(OrderTooLarge):
        census(5, SearchFilter(involutive=True))


def test_filter_names():
    f = SearchFilter.from_names(["e-invariant", "bijective"])
    assert f.label() == "bijective+e-invariant"
    with pytest.raises(ValueError):
        SearchFilter.from_names(["nope"])


def test_clifford_filters_need_clifford_carrier():
    with pytest.raises(PreconditionFailed):
        enumerate_solutions(left_zero(2), SearchFilter(e_fixed=True))


def test_solutions_are_sorted_and_valid():
    for S in semigroups(3):
        sols = enumerate_solutions(S)
        keys = [s.theta.tolist() for s in sols]
        assert keys == sorted(keys)
        assert all(pentagon_direct_check(s) for s in sols)


def test_filters_hold_on_results():
    for S in semigroups(3):
        for s in enumerate_solutions(S, SearchFilter(commutative=True, cocommutative=True)):
            p = classify_properties(s)
            assert p.commutative and p.cocommutative


def test_orbit_counts_match_labeled_reference():
    for n in (2, 3):
        rep = census(n)
        assert (rep.solutions_labeled, rep.iso_classes) == census_labeled(n)


def test_automorphisms():
    assert semigroup_automorphism_count(cyclic(3)) == 2
    assert semigroup_automorphism_count(left_zero(3)) == 6


@settings(max_examples=10)
@given(st.randoms(use_true_random=False), st.permutations(range(3)))
def test_census_ignores_labeling_and_order_of_carriers(rnd, perm):
    base = census(3)
    shuffled = [relabel(S, perm) for S in semigroups(3)]
    rnd.shuffle(shuffled)
    other = census(3, semigroups=shuffled)
    assert other.summary() | {"semigroups": None} == base.summary() | {"semigroups": None}
    assert [k for k, _ in other.catalog] == [k for k, _ in base.catalog]


def test_catalog_files_reverify(tmp_path):
    rep = census(2)
    doc = write_catalog(rep, tmp_path)
    files = sorted(os.listdir(tmp_path))
    assert "census.json" in files
    assert len(doc["catalog"]) == rep.iso_classes
    for entry in doc["catalog"]:
        s = solution_from_json(load(tmp_path / entry["file"]))
        assert pentagon_direct_check(s)
    assert json.loads((tmp_path / "census.json").read_text())["catalog_sha256"] == doc["catalog_sha256"]


def test_workers_do_not_change_results():
    for S in semigroups(3)[:8]:
        assert enumerate_solutions(S, workers=1) == enumerate_solutions(S, workers=4)
    assert enumerate_semigroups(3, workers=3) == enumerate_semigroups(3)
