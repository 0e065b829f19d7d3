"""Existence bounds for hypercuboids and size bounds for mixed codes.

All arithmetic is exact: integers throughout, :class:`fractions.Fraction`
where the Plotkin quantity needs a rational.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import CuboidShape
from .errors import ParameterError


@dataclass(frozen=True)
class ExistenceVerdict:
    """Outcome of ``sum(n_i) - (n1*...*nr) <= d - 1``.

    For class 1 the inequality is not a constraint (a modular cuboid
    always exists), so ``satisfied`` is True whatever ``lhs`` says.
    """

    lhs: int
    rhs: int
    satisfied: bool
    ethier_max: int | None = None


def existence_bound(shape: CuboidShape) -> ExistenceVerdict:
    lhs = sum(shape.sizes) - shape.order
    rhs = shape.d - 1
    satisfied = shape.cls == 1 or lhs <= rhs
    ethier = None
    if len(set(shape.sizes)) == 1:
        n, r = shape.sizes[0], shape.cls
        ethier = (n - 1) ** (r - 1) + r
    return ExistenceVerdict(lhs, rhs, satisfied, ethier)


def table1_check(max_first: int = 5, max_dim: int = 6, r: int = 2) -> list[tuple[int, ...]]:
    """Every non-increasing shape with ``n1 <= max_first``, ``d <= max_dim``
    and class ``r`` that violates the existence inequality.

    Ordered by dimension, then lexicographically.
    """
    out = []
    for d in range(r + 1, max_dim + 1):
        found = []
        for sizes in itertools.combinations_with_replacement(range(max_first, 1, -1), d):
            if not existence_bound(CuboidShape(sizes, r)).satisfied:
                found.append(sizes)
        out.extend(sorted(found))
    return out


def cube_max_dimension(n: int, r: int) -> Fraction:
    """Largest ``d`` the inequality allows for a cube of side ``n``: (n^r - 1)/(n - 1)."""
    return Fraction(n ** r - 1, n - 1)


def _check_delta(alphabets, delta):
    if not 1 <= delta <= len(alphabets):
        raise ParameterError(f"delta must lie in [1, {len(alphabets)}], got {delta}")


def singleton_bound(alphabets: Sequence[int], delta: int) -> int:
    """Product of the ``d - delta + 1`` smallest alphabet sizes."""
    _check_delta(alphabets, delta)
    keep = len(alphabets) - delta + 1
    return math.prod(sorted(alphabets)[:keep])


def distance_shell(alphabets: Sequence[int], k: int) -> int:
    """Number of words at distance exactly ``k`` from any fixed word."""
    return sum(math.prod(alphabets[i] - 1 for i in pos)
               for pos in itertools.combinations(range(len(alphabets)), k))


def sphere_size(alphabets: Sequence[int], t: int) -> int:
    """Number of words within distance ``t`` of any fixed word."""
    if not 0 <= t <= len(alphabets):
        raise ParameterError(f"radius must lie in [0, {len(alphabets)}], got {t}")
    return sum(distance_shell(alphabets, k) for k in range(t + 1))


def hamming_bound(alphabets: Sequence[int], t: int) -> int:
    """Floor of ``|space| / sphere_size(t)``.

    This limits codes of minimum distance ``2t + 1`` (radius-``t`` spheres
    are then disjoint).  It is *not* a valid limit at distance ``2t``: over
    ``(2, 2)`` it gives 1 while ``{00, 11}`` has distance 2.
    """
    if t < 1:
        raise ParameterError(f"t must be at least 1, got {t}")
    return math.prod(alphabets) // sphere_size(alphabets, t)


def plotkin_rho(alphabets: Sequence[int]) -> Fraction:
    d = len(alphabets)
    return 1 - sum(Fraction(1, d * n) for n in alphabets)


def plotkin_bound(alphabets: Sequence[int], delta: int) -> int | None:
    """``floor(delta / (delta - rho*d))`` when ``rho*d < delta``, else None."""
    rho_d = plotkin_rho(alphabets) * len(alphabets)
    if rho_d >= delta:
        return None
    return math.floor(Fraction(delta) / (delta - rho_d))


@dataclass(frozen=True)
class BoundReport:
    alphabets: tuple[int, ...]
    delta: int
    singleton: int
    hamming: int | None
    sphere_packing: int
    plotkin: int | None
    plotkin_rho: Fraction
    trivial_floor: int
    trivial_ceil: int


def bound_report(alphabets: Sequence[int], delta: int) -> BoundReport:
    """Every applicable bound on the largest code with minimum distance ``delta``.

    ``hamming`` is ``hamming_bound(alphabets, delta // 2)`` for even
    ``delta``, the quotient as usually stated for distance ``2t``; it can sit
    below the true optimum.  ``sphere_packing`` is the sound version,
    ``hamming_bound`` at radius ``(delta - 1) // 2``.

    ``trivial_floor``/``trivial_ceil`` are the elementary limits: a code of
    size ``min(alphabets)`` always exists (a diagonal code), no code exceeds
    the whole space, and both are exact at ``delta = d`` and ``delta = 1``.
    """
    alphabets = tuple(alphabets)
    _check_delta(alphabets, delta)
    d = len(alphabets)
    space = math.prod(alphabets)
    floor_, ceil_ = min(alphabets), space
    if delta == 1:
        floor_ = space
    if delta == d:
        ceil_ = min(alphabets)
    hamming = hamming_bound(alphabets, delta // 2) if delta % 2 == 0 else None
    packing = space // sphere_size(alphabets, (delta - 1) // 2)
    return BoundReport(alphabets, delta, singleton_bound(alphabets, delta), hamming,
                       packing, plotkin_bound(alphabets, delta), plotkin_rho(alphabets),
                       floor_, ceil_)
