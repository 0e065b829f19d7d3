"""Explicit constructions of Latin hypercuboids.

* :func:`modular_class1` - coordinate sum modulo ``n1``.
* :func:`seed_cube`, :func:`seed_cuboid` - lift an ``r``-dimensional array
  of tuples by applying one permutation per layer to every tuple component.
* :func:`extend_cube` - add a dimension to a cubic cuboid using the layer
  permutations of an ``LHC(r+1, n, r)``.
* :func:`matrix_cube` - the linear quasigroup ``x -> x f`` over GF(p).

Every construction validates its output before returning it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .core import (CuboidShape, Hypercuboid, rank_tuple, unrank_symbol,
                   validate)
from .errors import ConstructionError, DataError, ParameterError


def _checked(c: Hypercuboid, what: str) -> Hypercuboid:
    report = validate(c)
    if not report.valid:
        raise ConstructionError(f"{what} produced an invalid cuboid: {report.describe()}",
                                report.first_violation)
    return c


def modular_class1(shape: CuboidShape) -> Hypercuboid:
    if shape.cls != 1:
        raise ParameterError(f"modular construction is class 1 only, got class {shape.cls}")
    n1 = shape.sizes[0]
    cells = [sum(shape.coord(i)) % n1 for i in range(shape.num_cells)]
    return _checked(Hypercuboid(shape, n1, tuple(cells)), "modular_class1")


def cyclic_square(n: int) -> Hypercuboid:
    """The Cayley table of Z_n as an ``(n, n)`` class-1 cuboid."""
    return modular_class1(CuboidShape((n, n), 1))


def _square_rows(square: Hypercuboid) -> list[tuple[int, ...]]:
    n1, n2 = square.sizes
    return [square.cells[i * n1:(i + 1) * n1] for i in range(n2)]


def seed_cuboid(sizes: Sequence[int],
                layer_perms: Sequence[Sequence[Sequence[int]]]) -> Hypercuboid:
    """Stack permuted copies of the identity array of shape ``sizes``.

    The base array holds at each cell ``x`` the tuple ``x`` itself.  Layer
    ``i`` applies ``layer_perms[i][j]`` to component ``j`` of every tuple.
    The result has shape ``sizes + (len(layer_perms),)`` and class
    ``len(sizes)``; it is validated before being returned.
    """
    sizes = tuple(sizes)
    r = len(sizes)
    for i, perms in enumerate(layer_perms):
        if len(perms) != r:
            raise ParameterError(f"layer {i} needs {r} component permutations")
        for j, p in enumerate(perms):
            if sorted(p) != list(range(sizes[j])):
                raise ParameterError(f"layer {i} component {j}: not a permutation of "
                                     f"range({sizes[j]})")
    shape = CuboidShape(sizes + (len(layer_perms),), r)
    base = [unrank_symbol(s, sizes) for s in range(math.prod(sizes))]
    cells = []
    for perms in layer_perms:
        cells.extend(rank_tuple([perms[j][t[j]] for j in range(r)], sizes) for t in base)
    return _checked(Hypercuboid(shape, shape.order, tuple(cells)), "seed_cuboid")


def seed_cube(n: int, r: int, square: Hypercuboid | None = None) -> Hypercuboid:
    """An ``LHC(r+1, n, r)`` from an ``n x n`` Latin square.

    Row ``i`` of the square is read as the permutation applied, componentwise,
    to the tuples of layer ``i``.  Defaults to the cyclic square.
    """
    if square is None:
        square = cyclic_square(n)
    if square.sizes != (n, n) or square.order != n or not square.is_full:
        raise DataError(f"expected a full {n}x{n} square on {n} symbols")
    report = validate(square)
    if not report.valid:
        raise DataError(f"square is not Latin: {report.describe()}")
    if r < 1:
        raise ParameterError(f"class must be positive, got {r}")
    layer_perms = [(row,) * r for row in _square_rows(square)]
    return seed_cuboid((n,) * r, layer_perms)


def layer_permutations(s: Hypercuboid) -> list[tuple[int, ...]]:
    """Read each layer of an ``LHC(r+1, n, r)`` as a permutation of its
    ``n**r`` symbols relative to the first layer."""
    n_layer = s.shape.order
    layers = [s.cells[i:i + n_layer] for i in range(0, len(s.cells), n_layer)]
    first = layers[0]
    perms = []
    for layer in layers:
        p = [0] * n_layer
        for a, b in zip(first, layer):
            p[a] = b
        perms.append(tuple(p))
    return perms


def condition_witness(L: Hypercuboid, phis: Sequence[Sequence[int]]):
    """Find cells breaking the layer condition needed by :func:`extend_cube`.

    Stacking ``phi_i(L)`` fails exactly when two cells ``x != y`` lying in a
    common ``(r-1)``-subarray of ``L`` (distance at most ``r - 1``) satisfy
    ``L[y] = phi_j^-1(phi_i(L[x]))`` for some ``i != j``: then layers ``i``
    and ``j`` place one symbol twice in an ``r``-subarray through the new
    axis.  Returns ``(i, j, x, y)`` for the first such hit, or None.
    """
    shape = L.shape
    r = shape.cls
    inv = []
    for p in phis:
        q = [0] * len(p)
        for a, b in enumerate(p):
            q[b] = a
        inv.append(q)
    where = {s: [] for s in range(L.order)}
    for idx, s in enumerate(L.cells):
        where[s].append(shape.coord(idx))
    for i, j in itertools.permutations(range(len(phis)), 2):
        for idx, s in enumerate(L.cells):
            target = inv[j][phis[i][s]]
            x = shape.coord(idx)
            for y in where[target]:
                if y != x and sum(a != b for a, b in zip(x, y)) <= r - 1:
                    return i, j, x, y
    return None


def extend_cube(L: Hypercuboid, S: Hypercuboid) -> Hypercuboid:
    """Embed a cubic ``LHC(d, n, r)`` into an ``LHC(d+1, n, r)``.

    Layer ``i`` of the result is ``L`` with the ``i``-th layer permutation of
    ``S`` applied to its symbols; the first permutation is the identity.
    """
    n, r = L.sizes[0], L.cls
    if len(set(L.sizes)) != 1:
        raise ParameterError("extend_cube needs a cubic L")
    if S.sizes != (n,) * (r + 1) or S.cls != r:
        raise ParameterError(f"S must be an LHC({r + 1}, {n}, {r}), got shape {S.shape}")
    for name, c in (("L", L), ("S", S)):
        if not c.is_full or c.order != c.shape.order:
            raise DataError(f"{name} must be full with order {c.shape.order}")
        report = validate(c)
        if not report.valid:
            raise DataError(f"{name} is not Latin: {report.describe()}")
    phis = layer_permutations(S)
    hit = condition_witness(L, phis)
    if hit is not None:
        i, j, x, y = hit
        raise ConstructionError(
            f"layer condition violated: layers {i} and {j} collide at cells {x} and {y}",
            hit)
    shape = CuboidShape((n,) * (L.shape.d + 1), r)
    cells = []
    for phi in phis:
        cells.extend(phi[s] for s in L.cells)
    return _checked(Hypercuboid(shape, shape.order, tuple(cells)), "extend_cube")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over GF(p) by Gaussian elimination."""
    a = [[v % p for v in row] for row in matrix]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], p - 2, p)
        for i in range(col + 1, n):
            f = a[i][col] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    return det % p


@dataclass(frozen=True)
class MatrixSpec:
    """A ``d x r`` matrix over GF(prime), rows given as tuples."""

    prime: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if not is_prime(self.prime):
            raise ParameterError(f"{self.prime} is not prime")
        if not entries or len({len(row) for row in entries}) != 1:
            raise ParameterError("matrix rows must be non-empty and of equal length")
        if any(not 0 <= v < self.prime for row in entries for v in row):
            raise ParameterError(f"entries must lie in [0, {self.prime})")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def parse(cls, prime: int, text: str) -> "MatrixSpec":
        """Parse ``"1,0;0,1;1,1"``: rows split on ``;``, entries on ``,``."""
        try:
            rows = [tuple(int(v) for v in row.split(",")) for row in text.split(";")]
        except ValueError as exc:
            raise ParameterError(f"bad matrix literal {text!r}") from exc
        return cls(prime, tuple(rows))


def singular_minor(spec: MatrixSpec) -> tuple[int, ...] | None:
    """First choice of ``r`` rows whose square submatrix is singular."""
    for rows in itertools.combinations(range(spec.rows), spec.cols):
        if det_mod_p([spec.entries[i] for i in rows], spec.prime) == 0:
            return rows
    return None


def check_matrix_quasigroup(spec: MatrixSpec) -> bool:
    return singular_minor(spec) is None


def matrix_cube(spec: MatrixSpec) -> Hypercuboid:
    """Cell ``x`` of the ``p^d`` cube holds the rank of ``x f`` in GF(p)^r."""
    p, d, r = spec.prime, spec.rows, spec.cols
    bad = singular_minor(spec)
    if bad is not None:
        raise ConstructionError(
            f"rows {tuple(i + 1 for i in bad)} give a singular {r}x{r} submatrix over GF({p})",
            bad)
    shape = CuboidShape((p,) * d, r)
    radices = (p,) * r
    cells = []
    for idx in range(shape.num_cells):
        x = shape.coord(idx)
        image = [sum(x[i] * spec.entries[i][j] for i in range(d)) % p for j in range(r)]
        cells.append(rank_tuple(image, radices))
    return _checked(Hypercuboid(shape, shape.order, tuple(cells)), "matrix_cube")
