"""Exhaustive counting and enumeration of semi-reduced Latin hypercuboids.

The search fills empty cells in flat-index order.  Every ``r``-subarray
keeps a bitmask of the symbols it already holds, so a cell's candidates are
the symbols missing from all masks of the subarrays through it.  After each
placement the subarrays touched are re-examined: an empty cell without
candidates, or (for subarrays that must hold every symbol) a missing symbol
that no empty cell can still take, prunes the branch.

Parallel runs split the tree at a fixed depth into independent units, each
solved from scratch by a worker process; counts and node totals add up to
exactly what a sequential run reports.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .bounds import existence_bound
from .core import EMPTY, CuboidShape, Hypercuboid, subarray_table, validate
from .errors import DataError, ParameterError, ResourceError

log = logging.getLogger(__name__)

Sink = Callable[[Hypercuboid], None]


@dataclass(frozen=True)
class SearchOptions:
    count_only: bool = False
    limit: int | None = None
    split_depth: int | None = None
    workers: int = 1
    node_budget: int | None = None
    debug: bool = False

    def __post_init__(self):
        if self.workers < 1:
            raise ParameterError(f"workers must be at least 1, got {self.workers}")
        if self.split_depth is not None and self.split_depth < 0:
            raise ParameterError(f"split_depth must be non-negative, got {self.split_depth}")
        if self.limit is not None and self.limit < 0:
            raise ParameterError(f"limit must be non-negative, got {self.limit}")


@dataclass(frozen=True)
class CountResult:
    shape: CuboidShape
    semi_reduced: int
    total_factor: int
    nodes_visited: int
    elapsed: float
    truncated: bool = False

    @property
    def total(self) -> int:
        return self.semi_reduced * self.total_factor


@lru_cache(maxsize=64)
def _tables(shape: CuboidShape, order: int):
    """Cell-to-subarray incidence, plus which subarrays need every symbol."""
    table = subarray_table(shape)
    sa_cells = tuple(cells for _, cells in table)
    cell_sas = [[] for _ in range(shape.num_cells)]
    for s, cells in enumerate(sa_cells):
        for c in cells:
            cell_sas[c].append(s)
    exact = tuple(order == shape.order and len(cells) == order for cells in sa_cells)
    return tuple(tuple(x) for x in cell_sas), sa_cells, exact


class _Stop(Exception):
    pass


def _search(shape: CuboidShape, order: int, grid: list[int], *, budget=None,
            on_solution=None, depth_cut=None, debug=False):
    """Depth-first search from ``grid``, which is used as scratch space.

    Returns ``(solutions, nodes, units)``.  With ``depth_cut`` set, nodes
    reached after that many placements are returned as ``units`` (grid
    copies) instead of being explored or counted.  ``on_solution`` gets
    each completed grid and may return True to stop the search.
    """
    cell_sas, sa_cells, exact = _tables(shape, order)
    full = (1 << order) - 1
    used = [0] * len(sa_cells)
    for c, v in enumerate(grid):
        if v != EMPTY:
            bit = 1 << v
            for s in cell_sas[c]:
                used[s] |= bit
    empties = [c for c, v in enumerate(grid) if v == EMPTY]
    total = len(empties)
    nodes = 0
    units = []

    def alive(c):
        for s in cell_sas[c]:
            union = 0
            for e in sa_cells[s]:
                if grid[e] == EMPTY:
                    m = full
                    for s2 in cell_sas[e]:
                        m &= ~used[s2]
                    if not m:
                        return False
                    union |= m
            if exact[s] and full & ~used[s] & ~union:
                return False
        return True

    def rec(k):
        nonlocal nodes
        if depth_cut is not None and k == depth_cut and k < total:
            units.append(list(grid))
            return 0
        nodes += 1
        if budget is not None and nodes > budget:
            raise ResourceError(f"node budget {budget} exceeded", nodes)
        if debug:
            assert validate(Hypercuboid(shape, order, tuple(grid))).valid
        if k == total:
            if on_solution is not None and on_solution(grid):
                raise _Stop
            return 1
        c = empties[k]
        sas = cell_sas[c]
        m = full
        for s in sas:
            m &= ~used[s]
        found = 0
        while m:
            bit = m & -m
            m ^= bit
            for s in sas:
                used[s] |= bit
            grid[c] = bit.bit_length() - 1
            if alive(c):
                found += rec(k + 1)
            grid[c] = EMPTY
            for s in sas:
                used[s] ^= bit
        return found

    count = 0
    try:
        count = rec(0)
    except _Stop:
        count = None
    return count, nodes, units


def _semi_reduced_root(shape: CuboidShape) -> list[int]:
    n = shape.order
    return list(range(n)) + [EMPTY] * (shape.num_cells - n)


def _run_unit(args):
    sizes, cls, order, grid, want_solutions, limit, budget = args
    shape = CuboidShape(sizes, cls)
    solutions = []

    def collect(g):
        solutions.append(tuple(g))
        return limit is not None and len(solutions) >= limit

    count, nodes, _ = _search(shape, order, list(grid), budget=budget,
                              on_solution=collect if want_solutions or limit else None)
    return (len(solutions) if count is None else count), nodes, count is None, solutions


def _choose_split(shape, order, grid, workers, split_depth):
    if split_depth is not None:
        _, nodes, units = _search(shape, order, grid, depth_cut=split_depth)
        return split_depth, nodes, units
    depth, best = 1, None
    while True:
        _, nodes, units = _search(shape, order, grid, depth_cut=depth)
        best = (depth, nodes, units)
        if len(units) >= 4 * workers or not units or depth >= shape.num_cells:
            return best
        depth += 1


def _drive(shape: CuboidShape, order: int, grid: list[int], opts: SearchOptions,
           sink: Sink | None):
    """Run the search sequentially or split across workers.

    Returns ``(count, nodes, truncated)``.
    """
    want = sink is not None and not opts.count_only
    limit = opts.limit
    if limit == 0:
        return 0, 0, True

    if opts.workers == 1:
        emitted = 0

        def emit(g):
            nonlocal emitted
            emitted += 1
            if want:
                sink(Hypercuboid(shape, order, tuple(g)))
            return limit is not None and emitted >= limit

        hook = emit if (want or limit is not None) else None
        count, nodes, _ = _search(shape, order, grid, budget=opts.node_budget,
                                  on_solution=hook, debug=opts.debug)
        if count is None:
            return emitted, nodes, True
        return count, nodes, False

    # Every solution sits at the same depth, so a frontier that produced
    # units holds no solutions of its own.
    depth, nodes, units = _choose_split(shape, order, grid, opts.workers, opts.split_depth)
    if not units:
        return _drive(shape, order, grid, SearchOptions(
            opts.count_only, limit, None, 1, opts.node_budget, opts.debug), sink)
    log.debug("split %s at depth %d into %d units", shape, depth, len(units))
    count = 0
    truncated = False
    jobs = [(shape.sizes, shape.cls, order, u, want, limit, opts.node_budget) for u in units]
    pool = ProcessPoolExecutor(max_workers=opts.workers)
    try:
        for sub_count, sub_nodes, _, sols in pool.map(_run_unit, jobs):
            nodes += sub_nodes
            if opts.node_budget is not None and nodes > opts.node_budget:
                raise ResourceError(f"node budget {opts.node_budget} exceeded", nodes)
            if limit is not None and count + sub_count >= limit:
                take = limit - count
                if want:
                    for g in sols[:take]:
                        sink(Hypercuboid(shape, order, g))
                count = limit
                truncated = True
                break
            count += sub_count
            if want:
                for g in sols:
                    sink(Hypercuboid(shape, order, g))
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
    return count, nodes, truncated


def enumerate_semi_reduced(shape: CuboidShape, opts: SearchOptions = SearchOptions(),
                           sink: Sink | None = None) -> CountResult:
    """Emit every semi-reduced cuboid of ``shape`` to ``sink``.

    With one worker the emission order is lexicographic in the flat cell
    sequence.  Shapes failing the existence inequality return 0 without
    searching.
    """
    start = time.perf_counter()
    factor = math.factorial(shape.order)
    if not existence_bound(shape).satisfied:
        return CountResult(shape, 0, factor, 0, time.perf_counter() - start)
    count, nodes, truncated = _drive(shape, shape.order, _semi_reduced_root(shape), opts, sink)
    return CountResult(shape, count, factor, nodes, time.perf_counter() - start, truncated)


def count_semi_reduced(shape: CuboidShape, opts: SearchOptions = SearchOptions()) -> CountResult:
    opts = SearchOptions(True, opts.limit, opts.split_depth, opts.workers,
                         opts.node_budget, opts.debug)
    return enumerate_semi_reduced(shape, opts)


def total_count(shape: CuboidShape, opts: SearchOptions = SearchOptions()) -> CountResult:
    """Semi-reduced count together with the relabeling factor ``n!``.

    ``result.total`` is the number of all cuboids of the shape.
    """
    return count_semi_reduced(shape, opts)


def count_completions(p: Hypercuboid, opts: SearchOptions = SearchOptions()) -> int:
    """Number of full valid completions of ``p``, without symmetry breaking.

    On an empty array this is the unrestricted count of all cuboids.
    """
    _require_valid_partial(p)
    opts = SearchOptions(True, opts.limit, opts.split_depth, opts.workers,
                         opts.node_budget, opts.debug)
    count, _, _ = _drive(p.shape, p.order, list(p.cells), opts, None)
    return count


def complete_partial(p: Hypercuboid, opts: SearchOptions = SearchOptions()) -> Hypercuboid | None:
    """First full valid completion of ``p`` in search order, or None.

    Raises :class:`ResourceError` when the node budget runs out, so "no
    completion" and "gave up" stay distinguishable.
    """
    _require_valid_partial(p)
    if p.is_full:
        return p
    found = []
    opts = SearchOptions(False, 1, None, 1, opts.node_budget, opts.debug)
    _drive(p.shape, p.order, list(p.cells), opts, found.append)
    return found[0] if found else None


def _require_valid_partial(p: Hypercuboid):
    report = validate(p)
    if not report.valid:
        raise DataError(f"input is not a partial Latin hypercuboid: {report.describe()}")
