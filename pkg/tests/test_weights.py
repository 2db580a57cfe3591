import itertools
from collections import Counter
from fractions import Fraction

import pytest

from tempiric.weights import (
    SO3,
    SU2,
    TORUS1,
    CYCLIC2,
    CompactGroup,
    FormalSum,
    dual_label,
    enumerate_ktypes,
    hom_invariant_dim,
    tensor_decompose,
    vogan_norm,
    weights_of,
    weyl_dim,
)

import oracles

T1 = CompactGroup((TORUS1,))
C2 = CompactGroup((CYCLIC2,))
A1 = CompactGroup((SU2,))
B1 = CompactGroup((SO3,))
A1A1 = CompactGroup((SU2, SU2))
MIXED = CompactGroup((TORUS1, SU2))


def test_weyl_dim_atoms():
    assert weyl_dim(T1, (5,)) == 1
    assert weyl_dim(A1, (2,)) == 3
    assert weyl_dim(A1A1, (1, 2)) == 6
    assert weyl_dim(B1, (3,)) == 7
    assert weyl_dim(C2, (1,)) == 1


def test_weights_of_examples():
    assert weights_of(A1, (2,)) == Counter({(-2,): 1, (0,): 1, (2,): 1})
    assert weights_of(B1, (1,)) == Counter({(-1,): 1, (0,): 1, (1,): 1})
    assert weights_of(A1A1, (1, 1)) == Counter(
        {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1}
    )
    assert weights_of(T1, (5,)) == Counter({(5,): 1})


def test_weight_count_equals_dimension():
    for group in (A1, B1, A1A1, MIXED):
        for label in itertools.islice(_labels(group, 5), 200):
            assert sum(weights_of(group, label).values()) == weyl_dim(group, label)


def _labels(group, cap):
    axes = []
    for kind in group.atoms:
        if kind == CYCLIC2:
            axes.append([0, 1])
        elif kind == TORUS1:
            axes.append(list(range(-cap, cap + 1)))
        else:
            axes.append(list(range(0, cap + 1)))
    return itertools.product(*axes)


def test_tensor_examples():
    assert tensor_decompose(A1, (1,), (1,)) == {(0,): 1, (2,): 1}
    assert tensor_decompose(T1, (4,), (-7,)) == {(-3,): 1}
    assert tensor_decompose(C2, (1,), (1,)) == {(0,): 1}
    assert tensor_decompose(B1, (1,), (2,)) == {(1,): 1, (2,): 1, (3,): 1}


def test_tensor_preserves_dimension():
    for group in (A1, B1, A1A1):
        labels = [l for l in _labels(group, 8) if weyl_dim(group, l) <= 20]
        for l1, l2 in itertools.product(labels, repeat=2):
            product = tensor_decompose(group, l1, l2)
            total = sum(
                mult * weyl_dim(group, label) for label, mult in product.items()
            )
            assert total == weyl_dim(group, l1) * weyl_dim(group, l2)


@pytest.mark.parametrize("group", [T1, A1, B1, A1A1, MIXED])
def test_tensor_matches_peeling_oracle(group):
    cap = 8 if len(group.atoms) == 1 else 4
    labels = list(_labels(group, cap))
    for l1, l2 in itertools.product(labels, repeat=2):
        expected = oracles.tensor_by_peeling(group.atoms, l1, l2)
        got = {label: mult for label, mult in tensor_decompose(group, l1, l2).items()}
        assert got == expected, (l1, l2)


def test_dual_label():
    assert dual_label(T1, (3,)) == (-3,)
    assert dual_label(A1, (4,)) == (4,)
    assert dual_label(MIXED, (-2, 3)) == (2, 3)


def test_hom_invariant_dim():
    assert hom_invariant_dim(A1, FormalSum({(1,): 1}), FormalSum({(1,): 1})) == 1
    assert hom_invariant_dim(
        A1, FormalSum({(0,): 1, (2,): 2}), FormalSum({(2,): 1})
    ) == 2
    assert hom_invariant_dim(T1, FormalSum({(3,): 1}), FormalSum({(3,): 1})) == 1
    with pytest.raises(ValueError):
        hom_invariant_dim(A1, FormalSum({(1,): -1}), FormalSum({(1,): 1}))


def test_hom_dim_agrees_with_dual_tensor_route():
    # Hom(V1,V2)^G is the invariant part of dual(V1) (x) V2.
    for l1, l2 in itertools.product(_labels(MIXED, 3), repeat=2):
        direct = hom_invariant_dim(
            MIXED, FormalSum({l1: 1}), FormalSum({l2: 1})
        )
        product = tensor_decompose(MIXED, dual_label(MIXED, l1), l2)
        assert direct == product[(0, 0)]


def test_formal_sum_algebra():
    a = FormalSum({(1,): 2, (2,): 1})
    b = FormalSum({(1,): -2, (3,): 1})
    assert (a + b) == {(2,): 1, (3,): 1}
    assert 3 * a == {(1,): 6, (2,): 3}
    assert (a - a) == FormalSum()
    assert not FormalSum({(1,): 0})
    assert a[(9,)] == 0


def test_vogan_norm_catalog(sl2r, so31, sp11):
    assert vogan_norm(sl2r, (3,)) == 9
    assert vogan_norm(sp11, (0, 0)) == 8
    assert vogan_norm(so31, (2,)) == 9
    assert vogan_norm(so31, (0,)) == 1
    assert isinstance(vogan_norm(sp11, (1, 1)), Fraction)


def test_vogan_norm_matches_oracle(sl2r, so31, sp11):
    for datum in (sl2r, so31, sp11):
        for tau in enumerate_ktypes(datum, 50):
            assert vogan_norm(datum, tau) == oracles.norm_oracle(datum, tau)


def test_enumerate_ktypes_examples(sl2r, so31, sp11):
    assert enumerate_ktypes(sl2r, 4) == [(0,), (-1,), (1,), (-2,), (2,)]
    assert enumerate_ktypes(sp11, 8) == [(0, 0)]
    assert enumerate_ktypes(sl2r, -1) == []
    assert enumerate_ktypes(so31, 16) == [(0,), (1,), (2,), (3,)]


def test_enumerate_ktypes_sorted_and_stable(sl2r, so31, sp11):
    for datum in (sl2r, so31, sp11):
        window = enumerate_ktypes(datum, 100)
        again = enumerate_ktypes(datum, 100)
        assert window == again
        assert len(set(window)) == len(window)
        keys = [(vogan_norm(datum, tau), tau) for tau in window]
        assert keys == sorted(keys)


def test_enumerate_ktypes_is_exhaustive(sp11):
    # every label in a generous box with norm below the bound is listed
    window = set(enumerate_ktypes(sp11, 60))
    for label in _labels(sp11.k, 12):
        inside = vogan_norm(sp11, label) <= 60
        assert (label in window) == inside


def test_label_validation(sp11):
    with pytest.raises(ValueError):
        weyl_dim(sp11.k, (1,))
    with pytest.raises(ValueError):
        weyl_dim(sp11.k, (-1, 0))
    with pytest.raises(ValueError):
        weyl_dim(C2, (2,))
