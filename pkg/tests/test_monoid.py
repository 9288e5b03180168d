import json

import pytest

from dihom.common.errors import InfiniteError, InvalidCategoryError, InvalidPresentationError
from dihom.core.monoid import CommMonoid, MonoidKind, compose_homs, monoid_homs, parse_coefficients
from dihom.core.omegacat import pointed_monoid_endos


def test_cyclic_arithmetic(z2):
    assert z2.op(1, 1) == 0
    assert z2.unit == 0
    assert z2.elements() == [0, 1]
    assert z2.verify_axioms()


def test_free_commutative_elements():
    N2 = CommMonoid.free_commutative(2)
    assert N2.elements_up_to(1) == [(0, 0), (0, 1), (1, 0)]
    assert len(N2.elements_up_to(3)) == 10
    assert N2.op((1, 0), (0, 2)) == (1, 2)
    with pytest.raises(InfiniteError):
        N2.elements()


def test_free_associative_is_not_commutative():
    F = CommMonoid.free_associative(2)
    assert F.op((0,), (1,)) == (0, 1)
    assert not F.commutative
    assert CommMonoid.free_associative(1).commutative


def test_non_associative_table_is_rejected():
    with pytest.raises(InvalidCategoryError):
        CommMonoid.from_table([[0, 1, 2], [1, 2, 2], [2, 1, 1]])


def test_unit_law_is_checked():
    with pytest.raises(InvalidCategoryError):
        CommMonoid.from_table([[1, 0], [0, 1]], unit=0)


def test_commutative_flag_needs_symmetric_table():
    # 右零半群加外部单位元：结合但不交换
    table = [[0, 1, 2], [1, 1, 2], [2, 1, 2]]
    M = CommMonoid.from_table(table)
    assert not M.commutative
    with pytest.raises(InvalidCategoryError):
        CommMonoid.from_table(table, commutative=True)


@pytest.mark.parametrize("spec, label", [
    ("N", "N"), ("Z2", "Z/2"), ("Z/3", "Z/3"), ("trivial", "trivial"), ("freeC:2", "N^2"), ("freeA:2", "Free(2)"),
])
def test_parse_coefficients(spec, label):
    assert parse_coefficients(spec).label == label


def test_parse_table_file(tmp_path):
    path = tmp_path / "klein.json"
    path.write_text(json.dumps({"table": [[0, 1], [1, 1]], "label": "bool-or"}))
    M = parse_coefficients(f"table:{path}")
    assert M.kind is MonoidKind.TABLE
    assert M.label == "bool-or"
    assert M.op(1, 1) == 1


@pytest.mark.parametrize("spec", ["Q", "freeC:x", "table:/nonexistent/monoid.json"])
def test_parse_rejects_unknown(spec):
    with pytest.raises(InvalidPresentationError):
        parse_coefficients(spec)


def test_homs_between_finite_tables(z2):
    search = monoid_homs(z2, z2, bound=1)
    assert not search.truncated
    assert sorted(h.images for h in search.homs) == [(0, 0), (0, 1)]
    assert monoid_homs(CommMonoid.cyclic(3), z2, bound=1).homs[0].images == (0, 0, 0)
    assert len(monoid_homs(CommMonoid.cyclic(3), z2, bound=1).homs) == 1


def test_pointed_endos_of_delooped_naturals(naturals):
    search = pointed_monoid_endos(1, naturals, naturals, 6)
    assert search.truncated
    assert sorted(h.images for h in search.homs) == [((k,),) for k in range(7)]
    by_image = {h.images[0][0]: h for h in search.homs}
    for a in range(3):
        for b in range(3):
            assert compose_homs(by_image[a], by_image[b]).images == ((a * b,),)


def test_pointed_endos_need_commutative_for_higher_deloopings():
    F = CommMonoid.free_associative(2)
    with pytest.raises(ValueError):
        pointed_monoid_endos(2, F, F, 2)
