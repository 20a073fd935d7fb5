"""
Width bookkeeping for networks that output all d subpool maxes of order d-1.

Every order-(d-1) subset is the full index list with one element dropped.
Its positions 1..d-1 are halved repeatedly (odd windows overlap in their
middle position), and a window applied to all d subsets yields only
window-length + 1 distinct tuples, which is where the reuse comes from.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from estimators.exceptions import PreconditionError

from .exceptions import ScheduleError

logger = logging.getLogger(__name__)

Window = Tuple[int, int]
IndexTuple = Tuple[int, ...]


def _check_dimension(d: int):
    if d < 3:
        raise PreconditionError(f"Schedules need d >= 3, got d={d}.")


def schedule_depth(d: int) -> int:
    """ceil(log2(d - 1))."""
    _check_dimension(d)
    return (d - 2).bit_length()


def zeta(d: int, j: int) -> int:
    """ceil((d - 1) / 2^j): tuple length after j halvings."""
    return -(-(d - 1) // (2 ** j))


@dataclass(frozen=True)
class WidthSchedule:
    depth: int
    widths: Tuple[int, ...]


def width_schedule(d: int) -> WidthSchedule:
    depth = schedule_depth(d)
    widths = [2 ** ((d - 2).bit_length() - 1) + (d - 1)]
    widths.extend(2 ** (depth - j) * (1 + zeta(d, depth - j)) for j in range(2, depth + 1))
    return WidthSchedule(depth=depth, widths=tuple(widths))


@dataclass(frozen=True)
class TupleSchedule:
    d: int
    depth: int
    psi: Dict[int, Tuple[Window, ...]]
    tuples: Dict[int, Tuple[IndexTuple, ...]]
    parents: Dict[int, Dict[IndexTuple, Tuple[IndexTuple, IndexTuple]]]

    @property
    def rows(self) -> Tuple[IndexTuple, ...]:
        """The order-(d-1) subsets, dropping d, d-1, ..., 1 in turn."""
        return tuple(
            tuple(i for i in range(1, self.d + 1) if i != dropped)
            for dropped in range(self.d, 0, -1)
        )

    def width(self, j: int) -> int:
        return len(self.tuples[j])

    def split_table(self, j: int) -> List[List[IndexTuple]]:
        """Each row's segments at layer j, windows in increasing position."""
        return [[row[a - 1:b] for a, b in self.psi[j]] for row in self.rows]

    def repeated_count(self, j: int) -> int:
        """Number of layer-j tuples that occur in more than one row."""
        occurrences = Counter()
        for segments in self.split_table(j):
            occurrences.update(set(segments))
        return sum(1 for count in occurrences.values() if count > 1)


def _split(window: Window, size: int) -> Tuple[Window, Window]:
    a1, a2 = window
    return (a1, a1 + size - 1), (a2 - size + 1, a2)


def _lexicographic_parents(target: IndexTuple, previous: Tuple[IndexTuple, ...]):
    wanted = set(target)
    candidates = [p for p in previous if wanted.issuperset(p)]
    for i, left in enumerate(candidates):
        for right in candidates[i + 1:]:
            if wanted == set(left) | set(right):
                return left, right
    return None


def tuple_schedule(d: int) -> TupleSchedule:
    depth = schedule_depth(d)
    expected = width_schedule(d).widths

    psi: Dict[int, Tuple[Window, ...]] = {depth: ((1, d - 1),)}
    for j in range(depth - 1, 0, -1):
        size = zeta(d, depth - j)
        windows = set()
        for window in psi[j + 1]:
            windows.update(_split(window, size))
        psi[j] = tuple(sorted(windows))

    rows = tuple(tuple(i for i in range(1, d + 1) if i != dropped) for dropped in range(d, 0, -1))
    tuples: Dict[int, Tuple[IndexTuple, ...]] = {0: tuple((i,) for i in range(1, d + 1))}
    parents: Dict[int, Dict[IndexTuple, Tuple[IndexTuple, IndexTuple]]] = {}
    for j in range(1, depth + 1):
        layer = tuple(sorted({row[a - 1:b] for row in rows for a, b in psi[j]}))
        if len(layer) != expected[j - 1]:
            raise ScheduleError(j, f"{len(layer)} tuples, width formula gives {expected[j - 1]}.")
        links = {}
        for target in layer:
            pair = _lexicographic_parents(target, tuples[j - 1])
            if pair is None:
                raise ScheduleError(j, f"tuple {target} is not a union of two layer-{j - 1} tuples.")
            links[target] = pair
        tuples[j] = layer
        parents[j] = links

    if set(tuples[depth]) != set(rows):
        raise ScheduleError(depth, "final layer is not the set of order-(d-1) subsets.")
    logger.debug("Tuple schedule for d=%d: widths %s.", d, [len(tuples[j]) for j in range(1, depth + 1)])
    return TupleSchedule(d=d, depth=depth, psi=psi, tuples=tuples, parents=parents)
