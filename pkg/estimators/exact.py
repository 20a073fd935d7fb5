"""
Exact rational scalars, vectors and dense matrices.

``fractions.Fraction`` is the scalar type: it keeps numerator and denominator
in lowest terms with a positive denominator after every operation, so nothing
in the certified paths ever rounds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .exceptions import PreconditionError

ExactScalar = Fraction
ExactVector = Tuple[Fraction, ...]
Number = Union[int, float, str, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def to_exact(value: Number) -> Fraction:
    """Coerce ints, Fractions, "p/q"/decimal strings and floats (binary-exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError("Booleans are not rational values.")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise PreconditionError(f"Cannot interpret {value!r} as a rational value.")


def parse_rational(text: str) -> Fraction:
    match = _RATIONAL_RE.match(text)
    if match:
        denominator = int(match.group(2))
        if denominator == 0:
            raise PreconditionError(f"Zero denominator in {text!r}.")
        return Fraction(int(match.group(1)), denominator)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"Cannot parse {text!r} as a rational value.") from exc


def format_rational(value: Fraction) -> str:
    value = to_exact(value)
    return f"{value.numerator}/{value.denominator}"


def decimal_value(value: Fraction) -> float:
    """Nearest binary float; ``repr`` of it is the shortest round-trip decimal."""
    return float(value)


def vector(values: Iterable[Number]) -> ExactVector:
    return tuple(to_exact(v) for v in values)


def dot(left: Sequence[Fraction], right: Sequence[Fraction]) -> Fraction:
    if len(left) != len(right):
        raise PreconditionError(f"Length mismatch in dot product: {len(left)} vs {len(right)}.")
    return sum((a * b for a, b in zip(left, right)), Fraction(0))


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: ExactVector

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise PreconditionError("Matrix dimensions must be non-negative.")
        if len(self.entries) != self.rows * self.cols:
            raise PreconditionError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} "
                f"matrix, got {len(self.entries)}."
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: int | None = None) -> "ExactMatrix":
        rows = [vector(row) for row in rows]
        width = len(rows[0]) if rows else (cols or 0)
        for index, row in enumerate(rows, start=1):
            if len(row) != width:
                raise PreconditionError(f"Row {index} has {len(row)} entries, expected {width}.")
        return cls(len(rows), width, tuple(v for row in rows for v in row))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(size)] for i in range(size)], cols=size
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Index ({i}, {j}) out of range for shape {self.shape}.")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> ExactVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> ExactVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> Tuple[ExactVector, ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def matvec(self, values: Sequence[Number]) -> ExactVector:
        values = vector(values)
        if len(values) != self.cols:
            raise PreconditionError(f"Vector of length {len(values)} does not match {self.cols} columns.")
        return tuple(dot(self.row(i), values) for i in range(self.rows))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise PreconditionError(f"Cannot multiply {self.shape} by {other.shape}.")
        columns = [other.column(j) for j in range(other.cols)]
        return ExactMatrix.from_rows(
            [[dot(self.row(i), col) for col in columns] for i in range(self.rows)],
            cols=other.cols,
        )

    def scale(self, factor: Number) -> "ExactMatrix":
        factor = to_exact(factor)
        return ExactMatrix(self.rows, self.cols, tuple(factor * v for v in self.entries))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )
