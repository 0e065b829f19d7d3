"""Hypercuboid domain types, subarray iteration and the class-r validity check.

Layout conventions used throughout the package:

* Shapes are non-increasing, ``n1 >= n2 >= ... >= nd >= 2``.
* Cells are stored flat with coordinate 1 varying fastest, so the flat index
  of ``(x1, ..., xd)`` is ``x1 + n1*(x2 + n2*(x3 + ...))``.  A nested list
  indexed ``[xd]...[x2][x1]`` flattens to exactly this order, which is how the
  usual layer display reads: layer ``x3``, row ``x2``, column ``x1``.
* The first ``r``-subarray (coordinates ``1..r`` varying, the rest at 0) is
  therefore the literal first ``n = n1*...*nr`` cells.
* Symbols are 0-based.  A symbol of a class-``r`` cuboid stands for the tuple
  ``(t1, ..., tr)`` with ``ti < ni`` via :func:`rank_tuple`, again with the
  first component fastest.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DataError, ParameterError, ResourceError

EMPTY = -1


def rank_tuple(values: Sequence[int], radices: Sequence[int]) -> int:
    """Mixed-radix rank of ``values``, first component least significant."""
    rank = 0
    for v, n in zip(reversed(values), reversed(radices)):
        rank = rank * n + v
    return rank


def unrank_symbol(symbol: int, radices: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`rank_tuple`."""
    out = []
    for n in radices:
        symbol, v = divmod(symbol, n)
        out.append(v)
    return tuple(out)


def normalize_sizes(sizes: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sort ``sizes`` into non-increasing order.

    Returns the sorted sizes and ``perm`` where ``perm[i]`` is the original
    coordinate now sitting at position ``i``.  The sort is stable.
    """
    perm = tuple(sorted(range(len(sizes)), key=lambda i: -sizes[i]))
    return tuple(sizes[i] for i in perm), perm


@dataclass(frozen=True)
class CuboidShape:
    """Type ``(n1, ..., nd)`` together with the class ``r``."""

    sizes: tuple[int, ...]
    cls: int

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise ParameterError(f"dimension must be at least 2, got {sizes}")
        if any(n < 2 for n in sizes):
            raise ParameterError(f"every size must be at least 2, got {sizes}")
        if any(a < b for a, b in zip(sizes, sizes[1:])):
            raise ParameterError(
                f"sizes must be non-increasing, got {sizes}; see normalize_sizes")
        if not 1 <= self.cls <= len(sizes) - 1:
            raise ParameterError(
                f"class must lie in [1, {len(sizes) - 1}], got {self.cls}")

    @property
    def d(self) -> int:
        return len(self.sizes)

    @property
    def order(self) -> int:
        """Number of symbols of a full cuboid, ``n1*...*nr``."""
        return math.prod(self.sizes[: self.cls])

    @property
    def num_cells(self) -> int:
        return math.prod(self.sizes)

    @property
    def strides(self) -> tuple[int, ...]:
        return _strides(self.sizes)

    def index(self, coord: Sequence[int]) -> int:
        return sum(x * s for x, s in zip(coord, self.strides))

    def coord(self, index: int) -> tuple[int, ...]:
        return unrank_symbol(index, self.sizes)

    def __str__(self):
        return f"({','.join(map(str, self.sizes))}; r={self.cls})"


@lru_cache(maxsize=None)
def _strides(sizes: tuple[int, ...]) -> tuple[int, ...]:
    out, acc = [], 1
    for n in sizes:
        out.append(acc)
        acc *= n
    return tuple(out)


@dataclass(frozen=True)
class Hypercuboid:
    """A possibly partial array of symbols in ``[0, order)``.

    Empty cells hold :data:`EMPTY`.  Construction checks structure only;
    use :func:`validate` for the Latin property.
    """

    shape: CuboidShape
    order: int
    cells: tuple[int, ...]

    def __post_init__(self):
        cells = tuple(int(v) for v in self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.shape.num_cells:
            raise DataError(
                f"expected {self.shape.num_cells} cells for shape {self.shape}, "
                f"got {len(cells)}")
        if self.order < 1:
            raise DataError(f"order must be positive, got {self.order}")
        for i, v in enumerate(cells):
            if v != EMPTY and not 0 <= v < self.order:
                raise DataError(
                    f"cell {self.shape.coord(i)} holds {v}, outside [0, {self.order})")

    @classmethod
    def full(cls, sizes: Sequence[int], r: int, cells: Sequence[int]) -> "Hypercuboid":
        """A full cuboid of the natural order ``n1*...*nr``."""
        shape = CuboidShape(tuple(sizes), r)
        return cls(shape, shape.order, tuple(cells))

    @classmethod
    def empty(cls, shape: CuboidShape, order: int | None = None) -> "Hypercuboid":
        return cls(shape, order or shape.order, (EMPTY,) * shape.num_cells)

    @classmethod
    def from_nested(cls, nested, r: int, order: int | None = None,
                    one_based: bool = False) -> "Hypercuboid":
        """Build from a nested list indexed ``[xd]...[x1]``.

        ``None`` (or ``'*'``) marks an empty cell.  With ``one_based`` the
        symbols are shifted down by one, so 1-based displays can be
        pasted directly.
        """
        sizes_rev = []
        probe = nested
        while isinstance(probe, (list, tuple)):
            sizes_rev.append(len(probe))
            probe = probe[0]
        flat = list(_flatten(nested))
        shift = 1 if one_based else 0
        cells = [EMPTY if v is None or v == "*" else int(v) - shift for v in flat]
        shape = CuboidShape(tuple(reversed(sizes_rev)), r)
        return cls(shape, order or shape.order, tuple(cells))

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.shape.sizes

    @property
    def cls(self) -> int:
        return self.shape.cls

    @property
    def is_full(self) -> bool:
        return EMPTY not in self.cells

    def __getitem__(self, coord: Sequence[int]) -> int:
        return self.cells[self.shape.index(coord)]

    def to_nested(self, one_based: bool = False):
        """Nested list indexed ``[xd]...[x1]``; empty cells become ``None``."""
        shift = 1 if one_based else 0
        flat = [None if v == EMPTY else v + shift for v in self.cells]
        for n in self.sizes[:-1]:
            flat = [flat[i:i + n] for i in range(0, len(flat), n)]
        return flat

    def with_cells(self, cells: Sequence[int]) -> "Hypercuboid":
        return Hypercuboid(self.shape, self.order, tuple(cells))


def _flatten(nested):
    if isinstance(nested, (list, tuple)):
        for item in nested:
            yield from _flatten(item)
    else:
        yield nested


@dataclass(frozen=True)
class SubarraySelector:
    """A ``k``-subarray: the coordinates in ``varying`` range freely, every
    other coordinate is pinned by ``fixed`` (pairs of coordinate, value)."""

    varying: tuple[int, ...]
    fixed: tuple[tuple[int, int], ...]

    def cell_count(self, shape: CuboidShape) -> int:
        return math.prod(shape.sizes[i] for i in self.varying)

    def cells(self, shape: CuboidShape) -> list[int]:
        """Flat indices of the selected cells, ascending."""
        strides = shape.strides
        base = sum(strides[i] * v for i, v in self.fixed)
        offsets = [0]
        for i in self.varying:
            offsets = [o + strides[i] * x for x in range(shape.sizes[i]) for o in offsets]
        return sorted(base + o for o in offsets)


def iter_subarrays(shape: CuboidShape, k: int) -> Iterator[SubarraySelector]:
    """Every ``k``-subarray exactly once.

    Varying sets come in lexicographic order; for each, the fixings of the
    remaining coordinates are enumerated lexicographically.
    """
    d = shape.d
    if not 1 <= k <= d:
        raise ParameterError(f"k must lie in [1, {d}], got {k}")
    for varying in itertools.combinations(range(d), k):
        rest = [i for i in range(d) if i not in varying]
        for values in itertools.product(*(range(shape.sizes[i]) for i in rest)):
            yield SubarraySelector(varying, tuple(zip(rest, values)))


@lru_cache(maxsize=256)
def subarray_table(shape: CuboidShape, k: int | None = None):
    """Cached ``(selector, cells)`` pairs for all ``k``-subarrays (default ``r``)."""
    k = shape.cls if k is None else k
    return tuple((sel, tuple(sel.cells(shape))) for sel in iter_subarrays(shape, k))


@dataclass(frozen=True)
class Violation:
    selector: SubarraySelector
    symbol: int
    positions: tuple[tuple[int, ...], ...]
    kind: str = "duplicate"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    first_violation: Violation | None = None

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid"
        v = self.first_violation
        where = " and ".join(str(p) for p in v.positions)
        return (f"symbol {v.symbol} {v.kind} in subarray varying "
                f"{tuple(i + 1 for i in v.selector.varying)} "
                f"fixed {dict((i + 1, x) for i, x in v.selector.fixed)} at {where}")


def validate(c: Hypercuboid) -> ValidationReport:
    """Check the class-r Latin property.

    Every ``r``-subarray holds each symbol at most once.  When ``c`` is full
    and its order is ``n1*...*nr``, each subarray with that many cells must
    also hold every symbol exactly once; the second test is implied by the
    first for full arrays and serves as a self-check.
    """
    shape = c.shape
    n = shape.order
    exact = c.order == n and c.is_full
    cells = c.cells
    for sel, idx in subarray_table(shape):
        seen = {}
        for i in idx:
            s = cells[i]
            if s == EMPTY:
                continue
            if s in seen:
                return ValidationReport(False, Violation(
                    sel, s, (shape.coord(seen[s]), shape.coord(i))))
            seen[s] = i
        if exact and len(idx) == n and len(seen) != n:
            missing = min(set(range(n)) - set(seen))
            return ValidationReport(False, Violation(sel, missing, (), "missing"))
    return ValidationReport(True)


def distance_rule_valid(c: Hypercuboid) -> bool:
    """Independent validity oracle for full arrays of the natural order.

    Two cells sharing a symbol must differ in at least ``r + 1`` coordinates.
    """
    if not c.is_full or c.order != c.shape.order:
        raise ParameterError("distance rule applies to full arrays of order n1*...*nr")
    r = c.cls
    by_symbol: dict[int, list[tuple[int, ...]]] = {}
    for i, s in enumerate(c.cells):
        by_symbol.setdefault(s, []).append(c.shape.coord(i))
    for coords in by_symbol.values():
        for a, b in itertools.combinations(coords, 2):
            if sum(x != y for x, y in zip(a, b)) <= r:
                return False
    return True


def is_semi_reduced(c: Hypercuboid) -> bool:
    """True iff the first ``r``-subarray reads ``0, 1, ..., n-1``."""
    if not c.is_full:
        raise ParameterError("semi-reduced form is defined for full cuboids")
    n = c.shape.order
    return c.cells[:n] == tuple(range(n))


def semi_reduce(c: Hypercuboid) -> tuple[Hypercuboid, tuple[int, ...]]:
    """Relabel symbols so the cuboid becomes semi-reduced.

    Returns the new cuboid and the permutation ``perm`` with
    ``new symbol = perm[old symbol]``.
    """
    if not c.is_full:
        raise ParameterError("semi_reduce needs a full cuboid")
    n = c.shape.order
    head = c.cells[:n]
    if c.order != n or len(set(head)) != n:
        raise DataError("first subarray does not hold every symbol once")
    perm = [0] * n
    for i, s in enumerate(head):
        perm[s] = i
    return c.with_cells(perm[s] for s in c.cells), tuple(perm)


@dataclass(frozen=True)
class IsotopyTransform:
    """Symbol relabeling, per-axis index permutations and an optional
    coordinate permutation (``coord_perm[i]`` is where coordinate ``i`` goes).
    """

    symbol_perm: tuple[int, ...]
    axis_perms: tuple[tuple[int, ...], ...]
    coord_perm: tuple[int, ...] | None = None

    @classmethod
    def identity(cls, c: Hypercuboid) -> "IsotopyTransform":
        return cls(tuple(range(c.order)), tuple(tuple(range(n)) for n in c.sizes))


def _check_perm(p, n, what):
    if sorted(p) != list(range(n)):
        raise ParameterError(f"{what} is not a permutation of range({n}): {p}")


def apply_transform(c: Hypercuboid, t: IsotopyTransform) -> Hypercuboid:
    shape = c.shape
    d = shape.d
    _check_perm(t.symbol_perm, c.order, "symbol_perm")
    if len(t.axis_perms) != d:
        raise ParameterError(f"need {d} axis permutations, got {len(t.axis_perms)}")
    for i, p in enumerate(t.axis_perms):
        _check_perm(p, shape.sizes[i], f"axis permutation {i + 1}")
    coord_perm = t.coord_perm or tuple(range(d))
    _check_perm(coord_perm, d, "coord_perm")
    for i, j in enumerate(coord_perm):
        if shape.sizes[i] != shape.sizes[j]:
            raise ParameterError(
                f"coordinate {i + 1} (size {shape.sizes[i]}) cannot move to "
                f"coordinate {j + 1} (size {shape.sizes[j]})")
    new = [EMPTY] * shape.num_cells
    y = [0] * d
    for idx, s in enumerate(c.cells):
        x = shape.coord(idx)
        for i in range(d):
            y[coord_perm[i]] = t.axis_perms[i][x[i]]
        new[shape.index(y)] = EMPTY if s == EMPTY else t.symbol_perm[s]
    return c.with_cells(new)


def _generators(c: Hypercuboid, paratopy: bool) -> list[IsotopyTransform]:
    ident = IsotopyTransform.identity(c)
    gens = []
    for a in range(c.order - 1):
        p = list(range(c.order))
        p[a], p[a + 1] = a + 1, a
        gens.append(IsotopyTransform(tuple(p), ident.axis_perms))
    for i, n in enumerate(c.sizes):
        for a in range(n - 1):
            p = list(range(n))
            p[a], p[a + 1] = a + 1, a
            axes = list(ident.axis_perms)
            axes[i] = tuple(p)
            gens.append(IsotopyTransform(ident.symbol_perm, tuple(axes)))
    if paratopy:
        for i in range(c.shape.d - 1):
            if c.sizes[i] == c.sizes[i + 1]:
                q = list(range(c.shape.d))
                q[i], q[i + 1] = i + 1, i
                gens.append(IsotopyTransform(ident.symbol_perm, ident.axis_perms, tuple(q)))
    return gens


def orbit_bruteforce(c: Hypercuboid, paratopy: bool = False,
                     cap: int = 200_000) -> frozenset[Hypercuboid]:
    """Orbit of ``c`` under isotopy (or paratopy), by closure over generators.

    Intended for tiny shapes; raises :class:`ResourceError` once the orbit
    grows past ``cap``.
    """
    gens = _generators(c, paratopy)
    seen = {c}
    queue = deque([c])
    while queue:
        cur = queue.popleft()
        for g in gens:
            img = apply_transform(cur, g)
            if img not in seen:
                seen.add(img)
                if len(seen) > cap:
                    raise ResourceError(f"orbit exceeds cap {cap}")
                queue.append(img)
    return frozenset(seen)


def canonical_form(c: Hypercuboid, paratopy: bool = False,
                   cap: int = 200_000) -> Hypercuboid:
    """Orbit member with the lexicographically least cell sequence."""
    return min(orbit_bruteforce(c, paratopy, cap), key=lambda h: h.cells)
