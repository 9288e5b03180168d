import pytest

from dihom.common.errors import CompositionUnavailableError, NoBasepointError
from dihom.core.homotopy import (
    compare_endo,
    ho1,
    hurewicz_check,
    letter_count_oracle,
    linear_sphere_letters,
    pi_n,
    weak_classes,
)
from dihom.core.monoid import CommMonoid, parse_coefficients
from dihom.core.omegacat import BULLET, boundary, delooped_monoid, globe, globe_chain, product
from dihom.core.strat import StratSet, builtin_model, chain_category, combination, m_linear_reduced, street_nerve1

EDGE = (0, 1)


def test_weak_classes():
    assert weak_classes(globe(1)) == [[0, 1]]
    assert weak_classes(boundary(1)) == [[0], [1]]
    assert len(weak_classes(globe_chain(1, 3))) == 1
    assert len(weak_classes(product(boundary(1), globe(1)))) == 2


@pytest.mark.parametrize("C, D", [
    (boundary(1), globe(1)),
    (globe(1), boundary(1)),
    (boundary(1), boundary(2)),
    (globe_chain(1, 2), boundary(1)),
])
def test_weak_classes_of_product_are_product_partition(C, D):
    got = {frozenset(c) for c in weak_classes(product(C, D))}
    expected = {frozenset((a, b) for a in A for b in B) for A in weak_classes(C) for B in weak_classes(D)}
    assert got == expected


def _circle_ho1(M, bound):
    model = m_linear_reduced(builtin_model("s1", dim=2), M, bound)
    return ho1(model, word_bound=bound, weight_bound=bound)


def test_circle_with_natural_coefficients(naturals):
    result = _circle_ho1(naturals, 6)
    assert len(result.representatives) == 7
    assert result.endo.complete is False
    cmp = compare_endo(result, linear_sphere_letters(naturals, 6), naturals.op)
    assert cmp.injective and cmp.surjective and cmp.table_matches


def test_circle_words_collapse_to_sums(naturals):
    result = _circle_ho1(naturals, 4)
    e = lambda a: combination(naturals, [(EDGE, (a,))])
    assert result.class_of((e(1), e(2))) == result.class_of((e(3),))
    assert result.class_of((e(1), e(1), e(1), e(1))) == result.class_of((e(2), e(2)))
    assert result.class_of((e(0), e(1))) == result.class_of((e(1),))
    assert result.class_of((e(1),)) != result.class_of((e(2),))


def test_circle_with_cyclic_coefficients(z2):
    result = _circle_ho1(z2, 6)
    assert len(result.representatives) == 2
    cmp = compare_endo(result, linear_sphere_letters(z2, 6), z2.op)
    assert cmp.injective and cmp.surjective and cmp.table_matches


def test_circle_with_two_generators():
    N2 = CommMonoid.free_commutative(2)
    result = _circle_ho1(N2, 6)
    assert len(result.representatives) == len(N2.elements_up_to(6))
    cmp = compare_endo(result, linear_sphere_letters(N2, 6), N2.op)
    assert cmp.injective and cmp.surjective and cmp.table_matches


@pytest.mark.parametrize("bound", range(1, 5))
def test_classes_are_stable_in_the_bound(naturals, bound):
    small, large = _circle_ho1(naturals, bound), _circle_ho1(naturals, bound + 1)
    letters = linear_sphere_letters(naturals, bound)
    for a in letters:
        for b in letters:
            same_small = small.class_of(letters[a]) == small.class_of(letters[b])
            same_large = large.class_of(letters[a]) == large.class_of(letters[b])
            assert same_small == same_large


def test_ho1_of_point_is_trivial(naturals):
    model = m_linear_reduced(builtin_model("point", dim=2), naturals, 3)
    result = ho1(model, word_bound=3, weight_bound=3)
    assert result.representatives == [()]
    assert result.endo.table == {"0,0": 0}


def test_ho1_presentation_of_plain_nerve():
    X = street_nerve1(chain_category(1), dim=2, basepoint=0)
    result = ho1(X, word_bound=2, weight_bound=2)
    assert result.presentation.objects == ["0", "1"]
    assert len(result.presentation.generators) == 3
    assert result.representatives == [()]


def test_ho1_rejects_unknown_base(naturals):
    model = m_linear_reduced(builtin_model("s1", dim=2), naturals, 2)
    with pytest.raises(ValueError):
        ho1(model, base="elsewhere")
    with pytest.raises(ValueError):
        ho1(model, word_bound=0)


def test_letter_count_oracle():
    assert letter_count_oracle(2, 2) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
    assert letter_count_oracle(2, 4, modulus=2) == {(0, 0), (1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("g, coeff, bound, size", [
    (1, "N", 5, 6),
    (2, "N", 4, 15),
    (2, "Z2", 4, 4),
    (1, "Z2", 4, 2),
])
def test_hurewicz(g, coeff, bound, size):
    case = hurewicz_check(g, parse_coefficients(coeff), bound)
    assert case.lhs_size == case.rhs_size == size
    assert case.passed, case.witnesses


def test_hurewicz_rejects_other_coefficients():
    with pytest.raises(ValueError):
        hurewicz_check(2, CommMonoid.free_commutative(2), 2)
    with pytest.raises(ValueError):
        hurewicz_check(0, CommMonoid.naturals(), 2)


def test_pi_of_delooped_cyclic_group(z2):
    pi = pi_n(delooped_monoid(2, z2), BULLET, 1)
    assert pi.structure == "monoidal"
    assert pi.composition == "monoid"
    assert pi.endo.classes == ["0", "1"]
    assert pi.endo.table == {"0,0": 0, "0,1": 1, "1,0": 1, "1,1": 0}


def test_pi_of_globe_is_thin():
    pi = pi_n(globe(2), 0, 1)
    assert pi.objects == ["*"]
    assert pi.composition == "thin"
    assert pi_n(globe(2), 0, 0).hom_classes["0,1"] == [["0", "1"]]


def test_pi_without_composition():
    with pytest.raises(CompositionUnavailableError):
        pi_n(boundary(2), 0, 0)
    with pytest.raises(ValueError):
        pi_n(globe(1), 5, 1)


def test_ho1_without_vertices_has_no_basepoint():
    bare = StratSet(0, ((),), {}, {}, (frozenset(),))
    with pytest.raises(NoBasepointError):
        ho1(bare)
