from itertools import combinations_with_replacement, permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from dihom.common.errors import DihomError, DimensionMismatchError
from dihom.core.omegacat import functor_key, globe, globe_chain, hom_set
from dihom.core.pasting import POINT, enumerate_trees, tree_chain, tree_disk
from dihom.core.thetaset import (
    TOP,
    alpha_image,
    canonical_orbit,
    cell_signatures,
    nerve,
    power_orbits,
    reduced_chain_colimit_check,
    staircase_member,
    staircase_sort,
    sym,
    wedge_compare,
)

SHAPES = enumerate_trees(2, 3)
ENTRY = ((0, 1), ((("*",), ()),))  # D¹ → D¹ 的恒等


@settings(max_examples=1000, deadline=None)
@given(st.permutations(hom_set(tree_chain(2), globe(2))))
def test_canonical_orbit_ignores_order(entries):
    reference = hom_set(tree_chain(2), globe(2))
    assert canonical_orbit(entries) == canonical_orbit(reference)
    assert canonical_orbit(canonical_orbit(entries)) == canonical_orbit(entries)


def test_canonical_orbit_sorts_by_serialization():
    entries = hom_set(tree_disk(1), globe(1))
    orbit = canonical_orbit(reversed(entries))
    assert [functor_key(F) for F in orbit] == sorted(functor_key(F) for F in entries)


def test_nerve_sizes_for_d1():
    family = nerve(globe(1), 1, 2)
    assert family.sizes() == {"[]": 2, "[[]]": 3, "[[],[]]": 4}
    assert family.at(tree_disk(1)) == tuple(hom_set(tree_disk(1), globe(1)))


def test_nerve_records_per_degree_errors(monkeypatch):
    monkeypatch.setenv("DIHOM_MAX_DEPTH", "1")
    family = nerve(globe(2), 2, 2)
    assert family.sizes()["[[[]]]"] is None
    assert family.sizes()["[[]]"] == 4
    with pytest.raises(DihomError):
        family.at(tree_disk(2))


@pytest.mark.parametrize("n", range(4))
def test_power_orbit_sizes(n):
    base = nerve(globe(1), 2, 3)
    power = power_orbits(base, n)
    for t in base.catalog:
        assert len(power.at(t)) == comb(len(base.at(t)) + n - 1, n)


def test_power_orbits_are_canonical():
    power = power_orbits(nerve(globe(1), 1, 1), 2)
    for orbit in power.at(tree_disk(1)):
        assert orbit == canonical_orbit(orbit)


def test_sym_stacks_powers():
    families = sym(globe(1), 2, 1, 2)
    assert len(families) == 3
    assert [len(f.at(POINT)) for f in families] == [1, 2, 3]


def test_cell_signatures_of_identity_edge():
    assert cell_signatures(ENTRY, 1) == [(0, (0, 0)), (0, (0, 1)), (1, (1, TOP))]


def test_staircase_on_points():
    low, high = ((0,), ()), ((1,), ())
    assert staircase_member((high, low), 1)
    assert not staircase_member((low, high), 1)
    sigma, ordered = staircase_sort((low, high), 1)
    assert sigma == (1, 0)
    assert ordered == (high, low)


def test_staircase_reads_one_active_zero():
    id0, id1 = ((0, 0), ((("*",), ()),)), ((1, 1), ((("*",), ()),))
    assert staircase_member((id1, ENTRY, id0), 1)
    assert staircase_member((id1, ENTRY, ENTRY, id0), 1)
    assert not staircase_member((ENTRY, id1), 1)
    assert not staircase_member((id0, ENTRY), 1)


def test_staircase_rejects_mixed_shapes():
    with pytest.raises(DimensionMismatchError):
        staircase_member([((0,), ()), ENTRY], 1)
    with pytest.raises(DimensionMismatchError):
        staircase_member([ENTRY], 0)


@st.composite
def shuffled_alpha_images(draw):
    t = draw(st.sampled_from(SHAPES))
    n = draw(st.integers(min_value=1, max_value=3))
    F = draw(st.sampled_from(hom_set(t, globe_chain(1, n))))
    return draw(st.permutations(alpha_image(F, n)))


@settings(max_examples=300, deadline=None)
@given(shuffled_alpha_images())
def test_shuffled_alpha_images_sort_back(entries):
    sigma, ordered = staircase_sort(entries, 1)
    assert staircase_member(ordered, 1)
    assert sorted(sigma) == list(range(len(entries)))
    assert ordered == tuple(entries[i] for i in sigma)
    assert canonical_orbit(ordered) == canonical_orbit(entries)


@pytest.mark.parametrize("n", range(1, 4))
def test_every_orbit_has_one_sorted_member(catalog, n):
    for t in catalog:
        cells = hom_set(t, globe(1))
        for multiset in combinations_with_replacement(cells, n):
            members = [p for p in set(permutations(multiset)) if staircase_member(p, 1)]
            assert len(members) == 1, (t, multiset)
            for p in set(permutations(multiset)):
                assert staircase_sort(p, 1)[1] == members[0]


def test_pairs_of_edge_cells_sort_uniquely():
    cells = hom_set(tree_disk(1), globe(1))
    orbits = list(combinations_with_replacement(cells, 2))
    assert len(orbits) == 6
    for pair in orbits:
        assert sum(staircase_member(p, 1) for p in set(permutations(pair))) == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_wedge_is_bijective_for_k1(n):
    for case in wedge_compare(1, n, 2, 4):
        assert case.injective and case.surjective, case.theta
        assert case.lhs == case.rhs == case.image


def test_wedge_collides_for_k2_on_d2():
    cases = {str(c.theta): c for c in wedge_compare(2, 2, 2, 2)}
    case = cases[str(tree_disk(2).to_json())]
    assert (case.lhs, case.rhs, case.image) == (18, 15, 15)
    assert not case.injective
    assert case.surjective
    assert sum(len(w["preimages"]) - 1 for w in case.witnesses) == 3


def test_wedge_rejects_degenerate_parameters():
    with pytest.raises(ValueError):
        wedge_compare(0, 1, 1, 1)
    with pytest.raises(ValueError):
        wedge_compare(1, 0, 1, 1)


def test_chain_colimit_for_d1():
    cases = {str(c.theta): c for c in reduced_chain_colimit_check(1, 3, 1, 2)}
    d1 = cases[str(tree_disk(1).to_json())]
    assert d1.stage_sizes == [1, 3, 6, 10]
    assert d1.new_elements == [1, 2, 3, 4]
    assert all(d1.transitions_injective)
    assert d1.pattern_counts == [1, 2, 2, 2]
    assert d1.stabilization_index == 1


def test_chain_colimit_sizes_and_patterns(catalog):
    for case in reduced_chain_colimit_check(1, 4, 2, 4):
        m = len(case.theta)
        assert case.stage_sizes == [comb(n + m + 1, m + 1) for n in range(5)]
        assert case.pattern_counts == [sum(comb(m, s) for s in range(min(m, n) + 1)) for n in range(5)]
        assert case.stabilization_index <= case.generators


def test_chain_colimit_is_limited_to_k1():
    with pytest.raises(ValueError):
        reduced_chain_colimit_check(2, 2, 1, 1)
    with pytest.raises(ValueError):
        reduced_chain_colimit_check(1, 0, 1, 1)
