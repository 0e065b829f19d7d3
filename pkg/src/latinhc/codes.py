"""Mixed codes over cuboidal Hamming spaces and their link to hypercuboids.

Graphs are never built explicitly: two words are adjacent in the cuboidal
Hamming graph ``H(sizes, S)`` when their Hamming distance lies in ``S``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bounds import singleton_bound
from .core import CuboidShape, Hypercuboid, rank_tuple, unrank_symbol, validate
from .errors import DataError, ParameterError, ResourceError

Word = tuple[int, ...]

VERIFY_VERTEX_CAP = 10_000
BRUTEFORCE_SPACE_CAP = 16


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ParameterError(f"words of different length: {len(u)} and {len(v)}")
    return sum(a != b for a, b in zip(u, v))


def space(alphabets: Sequence[int]) -> Iterable[Word]:
    """All words of the space, lexicographically."""
    return itertools.product(*(range(n) for n in alphabets))


@dataclass(frozen=True)
class MixedCode:
    alphabets: tuple[int, ...]
    words: frozenset[Word]

    def __post_init__(self):
        alphabets = tuple(int(n) for n in self.alphabets)
        object.__setattr__(self, "alphabets", alphabets)
        if any(n < 1 for n in alphabets):
            raise DataError(f"alphabet sizes must be positive, got {alphabets}")
        words = []
        for w in self.words:
            w = tuple(int(x) for x in w)
            if len(w) != len(alphabets):
                raise DataError(f"word {w} has length {len(w)}, expected {len(alphabets)}")
            if any(not 0 <= x < n for x, n in zip(w, alphabets)):
                raise DataError(f"word {w} leaves the space {alphabets}")
            words.append(w)
        if len(set(words)) != len(words):
            raise DataError("duplicate words")
        object.__setattr__(self, "words", frozenset(words))

    @classmethod
    def of(cls, alphabets: Sequence[int], words: Iterable[Sequence[int]],
           one_based: bool = False) -> "MixedCode":
        shift = 1 if one_based else 0
        words = [tuple(x - shift for x in w) for w in words]
        if len(set(words)) != len(words):
            raise DataError("duplicate words")
        return cls(tuple(alphabets), frozenset(words))

    @property
    def length(self) -> int:
        return len(self.alphabets)

    def __len__(self):
        return len(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)


@dataclass(frozen=True)
class CodeMetrics:
    size: int
    distance_set: frozenset[int]
    min_distance: int | None
    is_additive: bool
    min_weight: int | None

    @property
    def detects(self) -> int | None:
        """Largest ``t`` with the code ``t``-error-detecting."""
        return None if self.min_distance is None else self.min_distance - 1

    @property
    def corrects(self) -> int | None:
        """Largest ``t`` with the code ``t``-error-correcting."""
        return None if self.min_distance is None else (self.min_distance - 1) // 2


def is_additive(code: MixedCode) -> bool:
    """Closed under componentwise addition modulo each alphabet size."""
    words = code.words
    ns = code.alphabets
    return all(tuple((a + b) % n for a, b, n in zip(u, v, ns)) in words
               for u in words for v in words)


def code_metrics(code: MixedCode) -> CodeMetrics:
    words = code.sorted_words()
    dists = frozenset(hamming_distance(u, v) for u, v in itertools.combinations(words, 2))
    additive = bool(words) and is_additive(code)
    min_weight = None
    if additive and len(words) > 1:
        min_weight = min(sum(x != 0 for x in w) for w in words if any(w))
    return CodeMetrics(len(words), dists, min(dists) if dists else None, additive, min_weight)


def corrects_errors(code: MixedCode, t: int) -> bool:
    """``t``-error-correcting straight from the definition.

    No word of the space may lie within distance ``t`` of two codewords.
    Brute force over the whole space.
    """
    words = code.sorted_words()
    for z in space(code.alphabets):
        near = 0
        for w in words:
            if hamming_distance(w, z) <= t:
                near += 1
                if near > 1:
                    return False
    return True


def is_mds(code: MixedCode) -> bool:
    """True iff the code meets the generalised Singleton bound."""
    m = code_metrics(code)
    if m.min_distance is None:
        return False
    return m.size == singleton_bound(code.alphabets, m.min_distance)


def transform_code(code: MixedCode, symbol_perms: Sequence[Sequence[int]],
                   coord_perm: Sequence[int] | None = None) -> MixedCode:
    """Apply an element of the space's automorphism group.

    ``symbol_perms[i]`` relabels coordinate ``i``; coordinate ``i`` then
    moves to position ``coord_perm[i]``, which must carry an alphabet of the
    same size.
    """
    d = code.length
    coord_perm = tuple(coord_perm) if coord_perm is not None else tuple(range(d))
    if sorted(coord_perm) != list(range(d)):
        raise ParameterError(f"not a coordinate permutation: {coord_perm}")
    for i, j in enumerate(coord_perm):
        if code.alphabets[i] != code.alphabets[j]:
            raise ParameterError(f"coordinates {i + 1} and {j + 1} have different alphabets")
    for i, p in enumerate(symbol_perms):
        if sorted(p) != list(range(code.alphabets[i])):
            raise ParameterError(f"symbol_perms[{i}] is not a permutation")
    out = []
    for w in code.words:
        y = [0] * d
        for i in range(d):
            y[coord_perm[i]] = symbol_perms[i][w[i]]
        out.append(tuple(y))
    return MixedCode(code.alphabets, frozenset(out))


def _max_clique(adj: list[int], candidates: int, current: int, best: list[int]):
    """Branch and bound over bitmask adjacency; ``best`` holds ``[size, mask]``."""
    if candidates == 0:
        size = bin(current).count("1")
        if size > best[0]:
            best[0], best[1] = size, current
        return
    while candidates:
        if bin(current).count("1") + bin(candidates).count("1") <= best[0]:
            return
        v = candidates.bit_length() - 1
        candidates &= ~(1 << v)
        _max_clique(adj, candidates & adj[v], current | (1 << v), best)


def max_code_bruteforce(alphabets: Sequence[int], delta: int) -> tuple[int, MixedCode]:
    """Exact largest code with minimum distance at least ``delta``.

    Maximum clique in the graph joining words at distance ``>= delta``.
    Restricted to spaces of at most 16 words.
    """
    alphabets = tuple(alphabets)
    size = math.prod(alphabets)
    if size > BRUTEFORCE_SPACE_CAP:
        raise ResourceError(f"space of {size} words exceeds the oracle cap "
                            f"{BRUTEFORCE_SPACE_CAP}")
    if not 1 <= delta <= len(alphabets):
        raise ParameterError(f"delta must lie in [1, {len(alphabets)}], got {delta}")
    words = list(space(alphabets))
    adj = [sum(1 << j for j, v in enumerate(words)
               if j != i and hamming_distance(u, v) >= delta)
           for i, u in enumerate(words)]
    best = [0, 0]
    _max_clique(adj, (1 << len(words)) - 1, 0, best)
    chosen = [w for j, w in enumerate(words) if best[1] >> j & 1]
    return best[0], MixedCode(alphabets, frozenset(chosen))


def cuboid_to_code(c: Hypercuboid, expand_symbols: bool = False) -> MixedCode:
    """Read a full cuboid as a code of (symbol, position) words.

    Without ``expand_symbols`` the words are ``(s, x1, ..., xd)`` over
    alphabets ``(n, n1, ..., nd)``.  With it, ``s`` is replaced by its tuple
    ``(t1, ..., tr)``, giving alphabets ``(n1, ..., nr, n1, ..., nd)``.
    """
    if not c.is_full:
        raise ParameterError("cuboid_to_code needs a full cuboid")
    report = validate(c)
    if not report.valid:
        raise DataError(f"cuboid is not Latin: {report.describe()}")
    shape = c.shape
    sym_radices = shape.sizes[: shape.cls]
    words = []
    for idx, s in enumerate(c.cells):
        head = unrank_symbol(s, sym_radices) if expand_symbols else (s,)
        words.append(head + shape.coord(idx))
    alphabets = (sym_radices if expand_symbols else (c.order,)) + shape.sizes
    return MixedCode(alphabets, frozenset(words))


def code_to_cuboid(code: MixedCode, r: int, require_mds: bool = False) -> Hypercuboid:
    """Inverse of ``cuboid_to_code(..., expand_symbols=True)``.

    The first ``r`` coordinates are the symbol tuple, the last ``d`` the
    cell.  Words must occupy distinct cells and words sharing a symbol must
    differ in at least ``r + 1`` position coordinates; those two conditions
    are exactly what makes the decoded array Latin.  ``require_mds``
    additionally demands minimum distance ``r + 1`` and the Singleton size,
    which only some symbol labelings achieve.
    """
    total = code.length
    d = total - r
    if r < 1 or d < 2:
        raise DataError(f"length {total} cannot split into {r} symbol and "
                        f"at least 2 position coordinates")
    sizes = code.alphabets[r:]
    if code.alphabets[:r] != sizes[:r]:
        raise DataError(f"symbol alphabets {code.alphabets[:r]} must equal the first "
                        f"{r} position alphabets {sizes[:r]}")
    try:
        shape = CuboidShape(sizes, r)
    except ParameterError as exc:
        raise DataError(str(exc)) from exc
    if len(code) != shape.num_cells:
        raise DataError(f"code has {len(code)} words, need {shape.num_cells}")
    if require_mds:
        delta = code_metrics(code).min_distance
        if delta != r + 1:
            raise DataError(f"minimum distance is {delta}, need {r + 1}")
        if not is_mds(code):
            raise DataError("code does not meet the Singleton bound")
    cells = [None] * shape.num_cells
    by_symbol: dict[Word, list[Word]] = {}
    for w in code.sorted_words():
        pos = w[r:]
        idx = shape.index(pos)
        if cells[idx] is not None:
            raise DataError(f"two words share the position {pos}")
        cells[idx] = rank_tuple(w[:r], sizes[:r])
        for other in by_symbol.setdefault(w[:r], []):
            if hamming_distance(other, pos) < r + 1:
                raise DataError(f"words with symbol {w[:r]} at positions {other} and "
                                f"{pos} differ in fewer than {r + 1} coordinates")
        by_symbol[w[:r]].append(pos)
    out = Hypercuboid(shape, shape.order, tuple(cells))
    report = validate(out)
    if not report.valid:
        raise DataError(f"decoded array is not Latin: {report.describe()}")
    return out


def code_is_clique(code: MixedCode, low_dist: int) -> bool:
    """All pairwise distances lie in ``{low_dist, ..., d}``."""
    return all(hamming_distance(u, v) >= low_dist
               for u, v in itertools.combinations(code.sorted_words(), 2))


def clique_extension(code: MixedCode, low_dist: int) -> Word | None:
    """A word outside the code at distance ``>= low_dist`` from every codeword."""
    for z in space(code.alphabets):
        if z not in code.words and all(hamming_distance(z, w) >= low_dist
                                       for w in code.words):
            return z
    return None


def is_maximal_clique(code: MixedCode, low_dist: int) -> bool:
    """A clique that no single word can extend."""
    return code_is_clique(code, low_dist) and clique_extension(code, low_dist) is None


@dataclass(frozen=True)
class Endomorphism:
    """A vertex map on ``H(sizes, S)``; vertices are flat cell indices."""

    sizes: tuple[int, ...]
    distance_set: frozenset[int]
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "distance_set", frozenset(self.distance_set))
        object.__setattr__(self, "mapping", tuple(self.mapping))
        n = math.prod(self.sizes)
        if len(self.mapping) != n or any(not 0 <= v < n for v in self.mapping):
            raise DataError(f"mapping must send each of {n} vertices to a vertex")

    @property
    def rank(self) -> int:
        return len(set(self.mapping))

    def kernel_classes(self) -> list[list[int]]:
        classes: dict[int, list[int]] = {}
        for v, img in enumerate(self.mapping):
            classes.setdefault(img, []).append(v)
        return [classes[k] for k in sorted(classes)]

    def kernel_sizes(self) -> Counter:
        return Counter(len(k) for k in self.kernel_classes())

    @classmethod
    def identity(cls, sizes: Sequence[int], distance_set: Iterable[int]) -> "Endomorphism":
        return cls(tuple(sizes), frozenset(distance_set), tuple(range(math.prod(sizes))))


def _vertex(index: int, sizes: Sequence[int]) -> Word:
    return unrank_symbol(index, sizes)


def build_endomorphism(c: Hypercuboid) -> Endomorphism:
    """Map each vertex of ``H(sizes, {1..r})`` to the cell of the first
    ``r``-subarray that holds the same symbol."""
    if not c.is_full or c.order != c.shape.order:
        raise DataError("need a full cuboid of order n1*...*nr")
    report = validate(c)
    if not report.valid:
        raise DataError(f"cuboid is not Latin: {report.describe()}")
    n = c.order
    where = {s: i for i, s in enumerate(c.cells[:n])}
    return Endomorphism(c.sizes, frozenset(range(1, c.cls + 1)),
                        tuple(where[s] for s in c.cells))


def verify_endomorphism(e: Endomorphism) -> bool:
    """Every edge maps to an edge: images distinct and still at a distance in S."""
    nv = len(e.mapping)
    if nv > VERIFY_VERTEX_CAP:
        raise ResourceError(f"{nv} vertices exceed the verification cap {VERIFY_VERTEX_CAP}")
    verts = [_vertex(i, e.sizes) for i in range(nv)]
    S = e.distance_set
    m = e.mapping
    for u in range(nv):
        for v in range(u + 1, nv):
            if hamming_distance(verts[u], verts[v]) in S:
                if hamming_distance(verts[m[u]], verts[m[v]]) not in S:
                    return False
    return True


def edge_count(sizes: Sequence[int], distance_set: Iterable[int]) -> int:
    S = set(distance_set)
    verts = list(space(sizes))
    return sum(hamming_distance(u, v) in S for u, v in itertools.combinations(verts, 2))
