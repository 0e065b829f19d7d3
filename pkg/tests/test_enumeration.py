import itertools
import math

import pytest

from latinhc import (CuboidShape, DataError, Hypercuboid, ParameterError, ResourceError,
                     is_semi_reduced, validate)
from latinhc.enumeration import (SearchOptions, complete_partial, count_completions,
                                 count_semi_reduced, enumerate_semi_reduced, total_count)


def brute_semi_reduced(shape):
    """Generate-and-test over every filling of the cells after the fixed prefix."""
    n = shape.order
    head = tuple(range(n))
    count = 0
    for tail in itertools.product(range(n), repeat=shape.num_cells - n):
        if validate(Hypercuboid(shape, n, head + tail)).valid:
            count += 1
    return count


@pytest.mark.parametrize("sizes,r,h", [((2, 2, 2), 1, 1), ((3, 2, 2), 1, 6),
                                       ((3, 2, 2), 2, 4), ((3, 3, 2), 1, 4)])
def test_small_counts(sizes, r, h):
    res = count_semi_reduced(CuboidShape(sizes, r))
    assert res.semi_reduced == h
    assert res.total == h * math.factorial(res.shape.order)
    assert res.nodes_visited > 0


def test_generate_and_test_small():
    shape = CuboidShape((2, 2, 2), 1)
    assert count_semi_reduced(shape).semi_reduced == brute_semi_reduced(shape)


def test_enumerated_solutions_are_valid_and_ordered():
    out = []
    res = enumerate_semi_reduced(CuboidShape((3, 2, 2), 2), SearchOptions(), out.append)
    assert res.semi_reduced == len(out) == 4
    assert all(validate(c).valid and is_semi_reduced(c) for c in out)
    assert [c.cells for c in out] == sorted(c.cells for c in out)
    assert len({c.cells for c in out}) == 4


def test_limit_truncates():
    out = []
    res = enumerate_semi_reduced(CuboidShape((3, 3, 2), 2), SearchOptions(limit=5), out.append)
    assert len(out) == 5 and res.truncated


def test_node_budget_raises():
    with pytest.raises(ResourceError) as info:
        count_semi_reduced(CuboidShape((3, 3, 2), 2), SearchOptions(node_budget=10))
    assert info.value.nodes is not None


def test_bound_violation_short_circuits():
    res = count_semi_reduced(CuboidShape((2, 2, 2, 2), 2))
    assert res.semi_reduced == 0 and res.nodes_visited == 0


def test_debug_mode_checks_every_node():
    res = count_semi_reduced(CuboidShape((3, 3, 2), 2), SearchOptions(debug=True))
    assert res.semi_reduced == 448


@pytest.mark.parametrize("workers,split", [(2, None), (3, 2), (2, 0)])
def test_parallel_matches_sequential(workers, split):
    shape = CuboidShape((3, 3, 2), 2)
    seq = count_semi_reduced(shape)
    par = count_semi_reduced(shape, SearchOptions(workers=workers, split_depth=split))
    assert (par.semi_reduced, par.nodes_visited) == (seq.semi_reduced, seq.nodes_visited)


def test_parallel_emission_matches_sequential():
    shape = CuboidShape((3, 2, 2), 2)
    a, b = [], []
    enumerate_semi_reduced(shape, SearchOptions(), a.append)
    enumerate_semi_reduced(shape, SearchOptions(workers=2), b.append)
    assert a == b


def test_options_validation():
    with pytest.raises(ParameterError):
        SearchOptions(workers=0)
    with pytest.raises(ParameterError):
        SearchOptions(split_depth=-1)


def test_totals_against_unrestricted_search():
    for sizes, r, want in [((2, 2, 2), 1, 2), ((3, 2, 2), 2, 2880), ((3, 2, 2), 1, 36)]:
        shape = CuboidShape(sizes, r)
        assert total_count(shape).total == want
        assert count_completions(Hypercuboid.empty(shape)) == want


def test_complete_partial_m(partial_m):
    done = complete_partial(partial_m)
    assert done is not None and done.is_full
    assert validate(done).valid
    assert done.cells[1:] == partial_m.cells[1:]
    assert done.cells[0] in (0, 1)
    assert count_completions(partial_m) == 2


def test_complete_full_returns_itself(cuboid_322):
    assert complete_partial(cuboid_322) is cuboid_322


def test_complete_invalid_raises(cuboid_322):
    cells = list(cuboid_322.cells)
    cells[0] = cells[1]
    with pytest.raises(DataError):
        complete_partial(cuboid_322.with_cells(cells))


def test_complete_none_when_stuck():
    # cell (0,0,0) sees 0 along axis 1 and 1 along axis 2
    shape = CuboidShape((2, 2, 2), 1)
    p = Hypercuboid(shape, 2, (-1, 0, 1, -1, -1, -1, -1, -1))
    assert validate(p).valid
    assert complete_partial(p) is None


def test_complete_budget_is_distinct_from_none():
    shape = CuboidShape((3, 3, 3), 2)
    with pytest.raises(ResourceError):
        complete_partial(Hypercuboid.empty(shape), SearchOptions(node_budget=3))
