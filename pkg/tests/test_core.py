import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latinhc import (EMPTY, CuboidShape, DataError, Hypercuboid, IsotopyTransform,
                     ParameterError, apply_transform, canonical_form, distance_rule_valid,
                     is_semi_reduced, iter_subarrays, orbit_bruteforce, semi_reduce, validate)
from latinhc.core import normalize_sizes, rank_tuple, subarray_table, unrank_symbol


def test_shape_basics():
    s = CuboidShape((3, 2, 2), 2)
    assert (s.d, s.order, s.num_cells) == (3, 6, 12)
    assert s.coord(0) == (0, 0, 0)
    assert s.coord(1) == (1, 0, 0)
    assert s.coord(3) == (0, 1, 0)
    assert s.index((2, 1, 1)) == 11


@pytest.mark.parametrize("sizes,r", [((2, 3, 2), 1), ((3, 2), 2), ((3, 2, 2), 0), ((3,), 1),
                                     ((3, 1, 1), 1)])
def test_shape_rejects_bad_parameters(sizes, r):
    with pytest.raises(ParameterError):
        CuboidShape(sizes, r)


def test_normalize_sizes_sorts_descending():
    sizes, perm = normalize_sizes((2, 3, 2))
    assert sizes == (3, 2, 2)
    assert sorted(perm) == [0, 1, 2]


@given(st.lists(st.integers(2, 5), min_size=1, max_size=4).flatmap(
    lambda rad: st.tuples(st.just(rad), st.integers(0, math.prod(rad) - 1))))
def test_rank_unrank_roundtrip(case):
    radices, s = case
    t = unrank_symbol(s, radices)
    assert all(0 <= x < n for x, n in zip(t, radices))
    assert rank_tuple(t, radices) == s


def test_rank_first_component_fastest():
    assert unrank_symbol(1, (3, 2)) == (1, 0)
    assert unrank_symbol(3, (3, 2)) == (0, 1)


def test_example_is_valid_and_semi_reduced(cuboid_322):
    assert cuboid_322.cells[:6] == (0, 1, 2, 3, 4, 5)
    assert validate(cuboid_322).valid
    assert is_semi_reduced(cuboid_322)
    assert cuboid_322[(0, 0, 1)] == 4  # layer 2, row 1, column 1 shows 5


def test_nested_roundtrip(cuboid_322):
    nested = cuboid_322.to_nested(one_based=True)
    assert nested == [[[1, 2, 3], [4, 5, 6]], [[5, 6, 4], [2, 3, 1]]]
    assert Hypercuboid.from_nested(nested, 2, one_based=True) == cuboid_322


def test_partial_m_is_valid_partial(partial_m):
    assert partial_m.order == 6
    assert partial_m.cells.count(EMPTY) == 1
    assert validate(partial_m).valid


def test_duplicate_reported_with_positions(cuboid_322):
    cells = list(cuboid_322.cells)
    cells[1] = cells[0]
    report = validate(cuboid_322.with_cells(cells))
    assert not report.valid
    v = report.first_violation
    assert v.symbol == 0 and v.positions == ((0, 0, 0), (1, 0, 0))
    assert "symbol 0" in report.describe()


def test_out_of_range_symbol_is_data_error():
    with pytest.raises(DataError):
        Hypercuboid.full((2, 2, 2), 1, [0, 1, 1, 2, 1, 0, 0, 1])
    with pytest.raises(DataError):
        Hypercuboid.full((2, 2, 2), 1, [0, 1])


def test_class1_cube_of_order_2():
    c = Hypercuboid.full((2, 2, 2), 1, [0, 1, 1, 0, 1, 0, 0, 1])
    assert validate(c).valid and distance_rule_valid(c)


def test_subarray_counts():
    shape = CuboidShape((3, 2, 2), 2)
    subs = list(iter_subarrays(shape, 2))
    # varying {1,2}: 2 fixings, {1,3}: 2, {2,3}: 3
    assert len(subs) == 7
    for sel, cells in subarray_table(shape):
        assert len(cells) == sel.cell_count(shape)
        for i in cells:
            x = shape.coord(i)
            assert all(x[k] == v for k, v in sel.fixed)


def test_subarray_cover():
    shape = CuboidShape((3, 3, 2), 1)
    for sel in iter_subarrays(shape, 1):
        assert len(sel.cells(shape)) == shape.sizes[sel.varying[0]]
    with pytest.raises(ParameterError):
        list(iter_subarrays(shape, 4))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=12, max_size=12))
def test_validator_agrees_with_distance_rule(cells):
    shape = CuboidShape((3, 2, 2), 1)
    c = Hypercuboid(shape, 3, tuple(v % 3 for v in cells))
    assert validate(c).valid == distance_rule_valid(c)


def test_semi_reduce_relabels(cuboid_322):
    perm = [3, 5, 0, 1, 4, 2]
    shuffled = cuboid_322.with_cells(perm[s] for s in cuboid_322.cells)
    assert not is_semi_reduced(shuffled)
    back, p = semi_reduce(shuffled)
    assert back == cuboid_322
    assert tuple(p[s] for s in shuffled.cells) == back.cells


def test_isotopy_preserves_validity(cuboid_322):
    t = IsotopyTransform((5, 4, 3, 2, 1, 0), ((2, 0, 1), (1, 0), (1, 0)))
    out = apply_transform(cuboid_322, t)
    assert validate(out).valid
    assert apply_transform(cuboid_322, IsotopyTransform.identity(cuboid_322)) == cuboid_322


def test_coordinate_permutation_needs_equal_sizes(cuboid_322):
    t = IsotopyTransform(tuple(range(6)), ((0, 1, 2), (0, 1), (0, 1)), (1, 0, 2))
    with pytest.raises(ParameterError):
        apply_transform(cuboid_322, t)
    swap = IsotopyTransform(tuple(range(6)), ((0, 1, 2), (0, 1), (0, 1)), (0, 2, 1))
    assert validate(apply_transform(cuboid_322, swap)).valid


def test_orbit_of_order_two_cube():
    c = Hypercuboid.full((2, 2, 2), 1, [0, 1, 1, 0, 1, 0, 0, 1])
    orbit = orbit_bruteforce(c)
    assert len(orbit) == 2  # the two class-1 cubes of order 2
    assert canonical_form(c).cells == min(o.cells for o in orbit)


def test_orbit_members_are_valid(cuboid_322):
    orbit = orbit_bruteforce(cuboid_322, cap=100_000)
    assert cuboid_322 in orbit
    assert all(validate(o).valid for o in itertools.islice(orbit, 200))


def test_canonical_form_is_orbit_invariant(cuboid_322):
    t = IsotopyTransform((1, 0, 2, 3, 5, 4), ((1, 2, 0), (0, 1), (1, 0)))
    assert canonical_form(apply_transform(cuboid_322, t)) == canonical_form(cuboid_322)
