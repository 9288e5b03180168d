import pytest

from dihom.common.errors import InvalidPresentationError
from dihom.core.pasting import (
    POINT,
    PastingTree,
    clear_catalog_cache,
    dimension,
    enumerate_trees,
    tree_chain,
    tree_disk,
)


def test_disk_and_chain_text():
    assert tree_disk(0) == POINT
    assert tree_disk(1).to_text() == "[[]]"
    assert tree_disk(2).to_text() == "[[[]]]"
    assert tree_chain(2).to_text() == "[[],[]]"
    assert tree_chain(0) == POINT


def test_height_edges_width():
    t = PastingTree.from_text("[[[],[]],[]]")
    assert t.height == dimension(t) == 2
    assert t.edge_count == 4
    assert t.width == 2


def test_from_text_matches_constructors():
    assert PastingTree.from_text("[[],[]]") == tree_chain(2)
    assert PastingTree.from_json([[[]]]) == tree_disk(2)


@pytest.mark.parametrize("text", ["[[]", "{}", "3", "[[], 1]"])
def test_invalid_text_is_rejected(text):
    with pytest.raises(InvalidPresentationError):
        PastingTree.from_text(text)


def test_negative_constructors():
    with pytest.raises(ValueError):
        tree_disk(-1)
    with pytest.raises(ValueError):
        tree_chain(-1)


def test_small_catalog_in_order():
    assert enumerate_trees(1, 2) == [POINT, tree_chain(1), tree_chain(2)]
    assert enumerate_trees(0, 5) == [POINT]
    assert enumerate_trees(3, 0) == [POINT]


def test_catalog_counts_compositions(catalog):
    # 高度 ≤ 2 时 e 条边的树对应 e 的合成数 2^{e-1}
    assert len(catalog) == 1 + 1 + 2 + 4 + 8
    assert len(set(catalog)) == len(catalog)
    assert catalog == sorted(catalog, key=lambda t: t.sort_key)
    assert all(t.height <= 2 and t.edge_count <= 4 for t in catalog)


def test_catalog_is_monotone_in_bounds():
    small = set(enumerate_trees(1, 3))
    assert small <= set(enumerate_trees(2, 3)) <= set(enumerate_trees(2, 4))
    assert tree_disk(3) in enumerate_trees(3, 3)
    assert tree_disk(3) not in enumerate_trees(2, 4)


def test_catalog_reparses_from_text():
    for t in enumerate_trees(3, 5):
        assert PastingTree.from_text(t.to_text()) == t
        assert PastingTree.from_json(t.to_json()) == t


@pytest.mark.parametrize("n", range(5))
def test_disk_and_chain_in_catalog(n):
    catalog = enumerate_trees(n, n)
    assert tree_disk(n) in catalog
    assert tree_chain(n) in catalog


def test_catalog_survives_cache_clear():
    before = enumerate_trees(2, 3)
    clear_catalog_cache()
    assert enumerate_trees(2, 3) == before
