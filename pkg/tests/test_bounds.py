import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latinhc import CuboidShape, ParameterError
from latinhc.bounds import (bound_report, cube_max_dimension, distance_shell,
                            existence_bound, hamming_bound, plotkin_bound, plotkin_rho,
                            singleton_bound, sphere_size, table1_check)
from latinhc.codes import hamming_distance, space
from latinhc.reference import NONEXISTENT_CLASS2

alphabet_lists = st.lists(st.integers(2, 5), min_size=1, max_size=4)


@pytest.mark.parametrize("sizes,r,lhs,rhs,ok", [
    ((2, 2, 2, 2), 2, 4, 3, False),
    ((3, 2, 2), 2, 1, 2, True),
    ((3, 3, 2, 2, 2), 2, 3, 4, True),
])
def test_existence_examples(sizes, r, lhs, rhs, ok):
    v = existence_bound(CuboidShape(sizes, r))
    assert (v.lhs, v.rhs, v.satisfied) == (lhs, rhs, ok)


def test_existence_class1_always_satisfied():
    v = existence_bound(CuboidShape((2, 2, 2, 2, 2, 2), 1))
    assert v.lhs > v.rhs and v.satisfied


def test_ethier_only_for_cubes():
    assert existence_bound(CuboidShape((3, 3, 3), 2)).ethier_max == 4
    assert existence_bound(CuboidShape((3, 3, 2), 2)).ethier_max is None


@given(st.lists(st.integers(2, 6), min_size=3, max_size=6), st.integers(2, 5))
def test_existence_verdict_matches_inequality(sizes, r):
    sizes = sorted(sizes, reverse=True)
    if r >= len(sizes):
        return
    v = existence_bound(CuboidShape(tuple(sizes), r))
    assert v.satisfied == (v.lhs <= v.rhs)
    assert v.lhs == sum(sizes) - math.prod(sizes[:r])


def test_table1_by_dimension():
    shapes = table1_check()
    by_d = {d: {s for s in shapes if len(s) == d} for d in (4, 5, 6)}
    assert by_d[4] == {(2, 2, 2, 2)}
    assert by_d[5] == {(2, 2, 2, 2, 2), (3, 2, 2, 2, 2), (3, 3, 3, 3, 2), (3, 3, 3, 3, 3)}
    assert len(by_d[6]) == 13
    assert sorted(shapes) == sorted(NONEXISTENT_CLASS2)


def test_cube_max_dimension():
    assert cube_max_dimension(3, 2) == 4
    assert cube_max_dimension(2, 3) == 7


@pytest.mark.parametrize("delta,want", [(1, 18), (2, 6), (3, 2)])
def test_singleton_examples(delta, want):
    assert singleton_bound((3, 3, 2), delta) == want


def test_singleton_rejects_bad_delta():
    with pytest.raises(ParameterError):
        singleton_bound((3, 3, 2), 4)
    with pytest.raises(ParameterError):
        singleton_bound((3, 3, 2), 0)


@given(alphabet_lists)
def test_singleton_non_increasing(alphabets):
    values = [singleton_bound(alphabets, k) for k in range(1, len(alphabets) + 1)]
    assert values == sorted(values, reverse=True)
    assert values[0] == math.prod(alphabets)
    assert values[-1] == min(alphabets)


@pytest.mark.parametrize("alphabets,t,want", [((2, 2, 2), 1, 4), ((3, 2, 2), 1, 5),
                                              ((3, 3, 2), 2, 14)])
def test_sphere_examples(alphabets, t, want):
    assert sphere_size(alphabets, t) == want


@given(alphabet_lists, st.data())
def test_sphere_size_by_count(alphabets, data):
    t = data.draw(st.integers(0, len(alphabets)))
    centre = tuple(data.draw(st.integers(0, n - 1)) for n in alphabets)
    direct = sum(hamming_distance(centre, w) <= t for w in space(alphabets))
    assert sphere_size(alphabets, t) == direct
    assert sphere_size(alphabets, 0) == 1
    assert sphere_size(alphabets, len(alphabets)) == math.prod(alphabets)
    assert sum(distance_shell(alphabets, k) for k in range(len(alphabets) + 1)) == \
        math.prod(alphabets)


@pytest.mark.parametrize("alphabets,want", [((2, 2, 2), 2), ((3, 2, 2), 2), ((2, 2), 1)])
def test_hamming_examples(alphabets, want):
    assert hamming_bound(alphabets, 1) == want


def test_plotkin_examples():
    assert plotkin_rho((2, 2)) == Fraction(1, 2)
    assert plotkin_bound((2, 2), 2) == 2
    assert plotkin_bound((2, 2, 2), 2) == 4
    assert plotkin_bound((3, 3, 2), 1) is None


def test_plotkin_tie_is_absent():
    # rho * d = 1 for (2, 2); delta = 1 hits the tie
    assert plotkin_bound((2, 2), 1) is None


def test_bound_report_fields():
    b = bound_report((3, 3, 2), 2)
    assert b.singleton == 6
    assert b.hamming == hamming_bound((3, 3, 2), 1)
    assert b.sphere_packing == 18
    assert bound_report((3, 3, 2), 3).hamming is None
    assert (b.trivial_floor, b.trivial_ceil) == (2, 18)
    assert bound_report((3, 3, 2), 1).trivial_floor == 18
    assert bound_report((3, 3, 2), 3).trivial_ceil == 2


@given(alphabet_lists, st.data())
def test_report_presence_rules(alphabets, data):
    delta = data.draw(st.integers(1, len(alphabets)))
    b = bound_report(alphabets, delta)
    assert (b.hamming is not None) == (delta % 2 == 0)
    assert (b.plotkin is not None) == (b.plotkin_rho * len(alphabets) < delta)
    assert b.trivial_floor <= b.singleton <= b.trivial_ceil


def test_bounds_are_order_free():
    for perm in itertools.permutations((4, 3, 2)):
        assert bound_report(perm, 2).singleton == 6
