import pytest

from dihom.common.errors import InvalidPresentationError, ShapeTooDeepError
from dihom.core.monoid import CommMonoid
from dihom.core.omegacat import (
    _hom,
    IDENTITY,
    ChainCoordinate,
    Projection,
    boundary,
    category_from_json,
    clear_hom_cache,
    delooped_monoid,
    empty,
    functor_key,
    globe,
    globe_chain,
    hom_set,
    monotone_map_count,
    postcompose,
    product,
    suspension,
    terminal,
)
from dihom.core.pasting import POINT, PastingTree, tree_chain, tree_disk


@pytest.mark.parametrize("tree, category, expected", [
    (tree_disk(1), globe(1), 3),
    (tree_disk(2), globe(2), 5),
    (tree_chain(2), globe_chain(1, 2), 10),
    (tree_disk(1), globe_chain(1, 2), 6),
    (POINT, globe(3), 2),
    (tree_disk(1), boundary(1), 2),
    (tree_disk(1), empty(), 0),
    (tree_chain(3), terminal(), 1),
])
def test_known_hom_sizes(tree, category, expected):
    assert len(hom_set(tree, category)) == expected


@pytest.mark.parametrize("j, k", [(j, k) for k in range(1, 4) for j in range(0, k + 1)])
def test_cells_of_disks(j, k):
    # D^j → D^k：j < k 时 2j+2 个，j = k 时 2k+1 个
    expected = 2 * k + 1 if j == k else 2 * j + 2
    assert len(hom_set(tree_disk(j), globe(k))) == expected


def test_globe_is_iterated_suspension():
    assert globe(0) == terminal()
    assert suspension(suspension(terminal())) == globe(2)
    assert boundary(0) == empty()
    assert suspension(empty()) == boundary(1)
    assert globe(1).basepoint == 0
    assert hom_set(POINT, product(globe(1), empty())) == []


def test_hom_set_elements_are_distinct():
    elements = hom_set(tree_chain(2), globe_chain(2, 2))
    keys = [functor_key(F) for F in elements]
    assert len(set(keys)) == len(keys)


def test_chain_matches_poset_oracle(catalog):
    for t in catalog:
        for n in range(5):
            assert len(hom_set(t, globe_chain(1, n))) == monotone_map_count(t, n), (t, n)


def test_product_splits_into_projections(catalog):
    C, D = globe(1), globe(2)
    for t in catalog:
        pairs = [(postcompose(F, Projection(0)), postcompose(F, Projection(1))) for F in hom_set(t, product(C, D))]
        assert len(set(pairs)) == len(pairs)
        assert set(pairs) == {(a, b) for a in hom_set(t, C) for b in hom_set(t, D)}


def test_chain_coordinate_lands_in_disk():
    cells = set(hom_set(tree_disk(1), globe(1)))
    for F in hom_set(tree_disk(1), globe_chain(1, 2)):
        for ell in (1, 2):
            assert postcompose(F, ChainCoordinate(ell)) in cells


def test_identity_postcomposition():
    for F in hom_set(tree_chain(2), globe_chain(1, 2)):
        assert postcompose(F, IDENTITY) == F


def test_delooped_monoid_cells():
    Z3 = CommMonoid.cyclic(3)
    assert len(hom_set(tree_disk(1), delooped_monoid(1, Z3))) == 3
    assert len(hom_set(tree_disk(2), delooped_monoid(2, Z3))) == 3
    assert len(hom_set(tree_chain(2), delooped_monoid(1, Z3))) == 9


def test_higher_delooping_needs_commutative():
    with pytest.raises(ValueError):
        delooped_monoid(2, CommMonoid.free_associative(2))
    with pytest.raises(ValueError):
        delooped_monoid(0, CommMonoid.cyclic(2))


def test_depth_bound():
    with pytest.raises(ShapeTooDeepError):
        hom_set(tree_disk(3), globe(3), max_depth=2)


def test_depth_bound_from_environment(monkeypatch):
    monkeypatch.setenv("DIHOM_MAX_DEPTH", "1")
    with pytest.raises(ShapeTooDeepError):
        hom_set(tree_disk(2), globe(2))


def test_invalid_chain_parameters():
    with pytest.raises(ValueError):
        globe_chain(0, 1)
    with pytest.raises(ValueError):
        globe_chain(1, -1)


def test_builtin_json():
    assert category_from_json('{"builtin": "globe", "params": [2]}') == globe(2)
    C = category_from_json({"builtin": "product", "params": [{"builtin": "globe", "params": [1]},
                                                             {"builtin": "terminal"}]})
    assert len(hom_set(tree_disk(1), C)) == 3
    B = category_from_json({"builtin": "delooped_monoid", "params": [1, "Z2"]})
    assert len(hom_set(tree_disk(1), B)) == 2


def test_explicit_json():
    C = category_from_json({"objects": ["a", "b"], "mor": {"a,b": {"builtin": "terminal"}}, "basepoint": "a"})
    assert C.basepoint == "a"
    assert len(hom_set(tree_disk(1), C)) == 3
    assert len(hom_set(tree_chain(2), C)) == 4


@pytest.mark.parametrize("spec", [
    "not json",
    "[1, 2]",
    '{"builtin": "nope"}',
    '{"builtin": "globe", "params": []}',
    '{"objects": ["a"], "mor": {"a,c": {"builtin": "terminal"}}}',
    '{"objects": ["a"], "mor": {"a,a": {"builtin": "empty"}}}',
    '{"objects": ["a", "a"]}',
])
def test_invalid_category_json(spec):
    with pytest.raises(InvalidPresentationError):
        category_from_json(spec)


def test_monotone_count_on_chains():
    assert monotone_map_count(tree_chain(2), 2) == 10
    assert monotone_map_count(PastingTree.from_text("[[[]],[]]"), 3) == 20


def test_hom_cache_is_bounded_and_clearable():
    assert _hom.cache_info().maxsize is not None
    before = hom_set(tree_chain(2), globe_chain(1, 2))
    assert _hom.cache_info().currsize > 0
    clear_hom_cache()
    assert _hom.cache_info().currsize == 0
    assert hom_set(tree_chain(2), globe_chain(1, 2)) == before
