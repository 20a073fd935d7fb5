"""
Subpool maxes and their averages.

Indices are 1-based throughout: ``combination_unrank(1, 2, 3)`` is ``(1, 2)``.
Pool vectors may hold Fractions (certified paths) or floats.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence, Tuple

from .exact import ExactMatrix, ExactVector
from .exceptions import EnumerationLimitError, PreconditionError

ENUMERATION_LIMIT = 10 ** 6


def _check_size(r: int, d: int):
    if d < 1:
        raise PreconditionError(f"Pool size must be at least 1, got d={d}.")
    if not 1 <= r <= d:
        raise PreconditionError(f"Subpool size must satisfy 1 <= r <= d, got r={r}, d={d}.")


def combination_unrank(j: int, r: int, d: int) -> Tuple[int, ...]:
    """The j-th (1-based) size-r subset of {1..d} in lexicographic order."""
    _check_size(r, d)
    total = comb(d, r)
    if not 1 <= j <= total:
        raise PreconditionError(f"Rank j={j} out of range 1..{total} for r={r}, d={d}.")
    remaining = j - 1
    subset = []
    candidate = 1
    for slots in range(r, 0, -1):
        while True:
            block = comb(d - candidate, slots - 1)
            if remaining < block:
                break
            remaining -= block
            candidate += 1
        subset.append(candidate)
        candidate += 1
    return tuple(subset)


def combination_rank(subset: Sequence[int], d: int) -> int:
    """Inverse of ``combination_unrank``."""
    subset = tuple(subset)
    r = len(subset)
    _check_size(r, d)
    if any(b <= a for a, b in zip(subset, subset[1:])) or subset[0] < 1 or subset[-1] > d:
        raise PreconditionError(f"{subset} is not a strictly increasing subset of 1..{d}.")
    rank = 0
    previous = 0
    for position, element in enumerate(subset):
        slots = r - position
        for skipped in range(previous + 1, element):
            rank += comb(d - skipped, slots - 1)
        previous = element
    return rank + 1


def subpool_max(x: Sequence, R: Sequence[int]):
    """max{x_j : j in R} with 1-based indices."""
    if not R:
        raise PreconditionError("Subpool index set must be nonempty.")
    d = len(x)
    for j in R:
        if not 1 <= j <= d:
            raise PreconditionError(f"Index {j} outside 1..{d}.")
    return max(x[j - 1] for j in R)


def sorted_descending(x: Sequence) -> list:
    return sorted(x, reverse=True)


def avg_subpool_max_direct(x: Sequence, r: int, limit: int = ENUMERATION_LIMIT):
    """Average of all C(d, r) subpool maxes, by explicit enumeration."""
    d = len(x)
    _check_size(r, d)
    total = comb(d, r)
    if total > limit:
        raise EnumerationLimitError(total, limit)
    acc = sum(max(x[i] for i in subset) for subset in combinations(range(d), r))
    return _divide(acc, total)


@lru_cache(maxsize=None)
def order_statistic_weights(r: int, d: int) -> ExactVector:
    """Weights C(d-j, r-1)/C(d, r) on x_(j), j = 1..d (zero beyond d-r+1)."""
    _check_size(r, d)
    total = comb(d, r)
    return tuple(Fraction(comb(d - j, r - 1), total) for j in range(1, d + 1))


def avg_subpool_max_orderstat(x: Sequence, r: int):
    """S(x; r, d) as a fixed weighted average of the order statistics."""
    d = len(x)
    _check_size(r, d)
    total = comb(d, r)
    ordered = sorted_descending(x)
    acc = sum(comb(d - j, r - 1) * ordered[j - 1] for j in range(1, d - r + 2))
    return _divide(acc, total)


def _divide(value, count: int):
    if isinstance(value, (int, Fraction)):
        return Fraction(value) / count
    return value / count


@lru_cache(maxsize=None)
def b_matrix(d: int) -> ExactMatrix:
    """(d-1) x d matrix mapping order statistics to (S(x;1,d), ..., S(x;d-1,d))."""
    if d < 2:
        raise PreconditionError(f"B(d) needs d >= 2, got {d}.")
    return ExactMatrix.from_rows([order_statistic_weights(r, d) for r in range(1, d)], cols=d)


@lru_cache(maxsize=None)
def v_matrix(d: int) -> ExactMatrix:
    """d x (d+1) matrix whose columns are the vertices of the sorted cone."""
    if d < 1:
        raise PreconditionError(f"V(d) needs d >= 1, got {d}.")
    return ExactMatrix.from_rows(
        [[Fraction(int(c > i)) for c in range(d + 1)] for i in range(d)], cols=d + 1
    )


@lru_cache(maxsize=None)
def k_matrix(d: int) -> ExactMatrix:
    """K(d) = B(d) V(d): subpool averages at each cone vertex."""
    return b_matrix(d) @ v_matrix(d)


def v_coordinates(x: Sequence) -> ExactVector:
    """Barycentric coordinates lambda with sorted(x, desc) = V(d) lambda, for x in [0, 1]^d."""
    ordered = [Fraction(v) for v in sorted_descending(x)]
    d = len(ordered)
    if d < 1 or ordered[0] > 1 or ordered[-1] < 0:
        raise PreconditionError("V-coordinates are defined on the unit cube only.")
    padded = [Fraction(1)] + ordered + [Fraction(0)]
    return tuple(padded[c] - padded[c + 1] for c in range(d + 1))
