"""
Explicit ReLU constructions for maxima of coordinates.

Every stage forms max(a, b) of two carried values with four ReLU units

    h = ReLU(a - b), ReLU(b - a), ReLU(a + b), ReLU(-a - b)
    max(a, b) = (h1 + h2 + h3 - h4) / 2

so the carried values are never materialised as neurons: each stage keeps a
linear "value map" over its own ReLU outputs and folds it into the weights
of the next layer.
"""
import logging
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from estimators.exact import to_exact
from estimators.exceptions import PreconditionError
from estimators.fitting import REstimator

from .relu import IDENTITY, RELU, DenseLayer, ReluNetwork
from .schedule import tuple_schedule

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
HALF = Fraction(1, 2)
GADGET_UNITS = 4

ValueRow = Tuple[Fraction, ...]


def _unit_row(size: int, index: int) -> ValueRow:
    return tuple(Fraction(int(i == index)) for i in range(size))


def _combine(left: ValueRow, right: ValueRow, sa: int, sb: int) -> ValueRow:
    return tuple(sa * a + sb * b for a, b in zip(left, right))


def _gadget_stage(value_map: Sequence[ValueRow], pairs, annotations) -> Tuple[DenseLayer, List[ValueRow]]:
    """One ReLU layer taking the max of each (left, right) pair of carried values."""
    weights, units = [], []
    for left, right in pairs:
        a, b = value_map[left], value_map[right]
        weights.extend([
            _combine(a, b, 1, -1),
            _combine(a, b, -1, 1),
            _combine(a, b, 1, 1),
            _combine(a, b, -1, -1),
        ])
    width = GADGET_UNITS * len(pairs)
    next_map = []
    for p in range(len(pairs)):
        row = [ZERO] * width
        base = GADGET_UNITS * p
        row[base], row[base + 1], row[base + 2], row[base + 3] = HALF, HALF, HALF, -HALF
        next_map.append(tuple(row))
    layer = DenseLayer(
        weights=tuple(weights),
        bias=(ZERO,) * width,
        activation=RELU,
        annotations=tuple(tuple(a) for a in annotations for _ in range(GADGET_UNITS)),
        units_per_value=GADGET_UNITS,
    )
    return layer, next_map


def _output_layer(value_map: Sequence[ValueRow], coefficients, bias, annotation=None) -> DenseLayer:
    width = len(value_map[0])
    row = [ZERO] * width
    for c, values in zip(coefficients, value_map):
        if c:
            for i, v in enumerate(values):
                row[i] += c * v
    return DenseLayer(
        weights=(tuple(row),),
        bias=(bias,),
        activation=IDENTITY,
        annotations=(annotation,) if annotation is not None else None,
    )


def heaviside_gate(d: int, xi) -> ReluNetwork:
    """sum_k ReLU(x_k - xi): zero exactly when max(x) <= xi."""
    if d < 1:
        raise PreconditionError(f"The heaviside gate needs d >= 1, got d={d}.")
    xi = to_exact(xi)
    hidden = DenseLayer(
        weights=tuple(_unit_row(d, k) for k in range(d)),
        bias=(-xi,) * d,
        activation=RELU,
        annotations=tuple((k + 1,) for k in range(d)),
    )
    total = DenseLayer(weights=((Fraction(1),) * d,), bias=(ZERO,), activation=IDENTITY)
    return ReluNetwork(input_dim=d, output_dim=1, layers=(hidden, total))


def pairwise_max_network(d: int) -> ReluNetwork:
    """
    Exact max of d inputs in ceil(log2 d) ReLU stages.

    Inputs are padded to the next power of two by repeating coordinate 1,
    which leaves the max unchanged and keeps every weight finite.
    """
    if d < 2:
        raise PreconditionError(f"The pairwise max network needs d >= 2, got d={d}.")
    stages = (d - 1).bit_length()
    sources = list(range(d)) + [0] * (2 ** stages - d)
    value_map = [_unit_row(d, s) for s in sources]
    carried = [(s + 1,) for s in sources]

    layers = []
    for _ in range(stages):
        pairs = [(2 * i, 2 * i + 1) for i in range(len(value_map) // 2)]
        carried = [tuple(sorted(set(carried[a]) | set(carried[b]))) for a, b in pairs]
        layer, value_map = _gadget_stage(value_map, pairs, carried)
        layers.append(layer)
    layers.append(_output_layer(value_map, (Fraction(1),), ZERO, annotation=carried[0]))
    logger.debug("Pairwise max network for d=%d: %d stages, padded to %d.", d, stages, len(sources))
    return ReluNetwork(input_dim=d, output_dim=1, layers=tuple(layers))


def d1_estimator(d: int) -> REstimator:
    """The optimal {0, d-1}-estimator: 1/(2d) + S(x; d-1, d)."""
    return REstimator(d=d, R=(0, d - 1), beta0=Fraction(1, 2 * d), betas=((d - 1, Fraction(1)),))


def d1_estimator_network(d: int) -> ReluNetwork:
    """
    The optimal {0, d-1}-estimator as a ReLU network.

    Hidden layer j carries the maxima of the tuples T(d, j); each is the max of
    its two parents at layer j-1, so every layer costs one gadget per tuple.
    """
    schedule = tuple_schedule(d)
    value_map = [_unit_row(d, i) for i in range(d)]
    layers = []
    for j in range(1, schedule.depth + 1):
        previous = {t: i for i, t in enumerate(schedule.tuples[j - 1])}
        current = schedule.tuples[j]
        pairs = []
        for target in current:
            left, right = schedule.parents[j][target]
            pairs.append((previous[left], previous[right]))
        layer, value_map = _gadget_stage(value_map, pairs, current)
        layers.append(layer)
    layers.append(_output_layer(value_map, (Fraction(1, d),) * len(value_map), Fraction(1, 2 * d)))
    return ReluNetwork(input_dim=d, output_dim=1, layers=tuple(layers))


def full_estimator_widths(d: int) -> Tuple[int, ...]:
    """Distinct subpool maxes of orders 2..d-1 needed by a full estimator."""
    if d < 3:
        raise PreconditionError(f"Full estimator widths need d >= 3, got d={d}.")
    return tuple(comb(d, r) for r in range(2, d))
