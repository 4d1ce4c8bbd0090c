from dataclasses import dataclass, field
from typing import NewType, Optional, Sequence, List

import numpy as np

from aggcorrect.model_core import constants
from aggcorrect.model_core.exceptions import RowSumViolationException, NegativeEntryException, DimensionMismatchException, InvalidKException, IndexOutOfRangeException, \
    NotBinaryException

ClassIndex = NewType("ClassIndex", int)


def get_class_index(value: int, k: int) -> ClassIndex:
    if not 0 <= value < k:
        raise IndexOutOfRangeException(f"Class index {value} is outside [0, {k})")
    return ClassIndex(int(value))


def _read_only(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ContingencyMatrix:
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows: np.ndarray = _read_only(self.rows)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise DimensionMismatchException(f"Contingency matrix must be square, got shape {rows.shape}")
        if rows.shape[0] < constants.MINIMUM_NUMBER_OF_CLASSES:
            raise InvalidKException(f"At least {constants.MINIMUM_NUMBER_OF_CLASSES} classes are required, got {rows.shape[0]}")
        if not np.all(np.isfinite(rows)) or np.any(rows < 0) or np.any(rows > 1):
            raise NegativeEntryException(f"Contingency entries must lie in [0, 1]: {rows.tolist()}")

        row_sums: np.ndarray = rows.sum(axis=1)
        violations: np.ndarray = np.flatnonzero(np.abs(row_sums - 1.0) > constants.ROW_SUM_TOLERANCE)
        if len(violations) > 0:
            raise RowSumViolationException(f"Row {int(violations[0])} sums to {row_sums[violations[0]]!r}, expected 1")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return int(self.rows.shape[0])

    @property
    def p(self) -> float:
        self._assert_binary()
        return float(self.rows[constants.POSITIVE_CLASS_INDEX, constants.NEGATIVE_CLASS_INDEX])

    @property
    def q(self) -> float:
        self._assert_binary()
        return float(self.rows[constants.NEGATIVE_CLASS_INDEX, constants.POSITIVE_CLASS_INDEX])

    def _assert_binary(self) -> None:
        if self.k != 2:
            raise NotBinaryException(f"p and q are only defined for two classes, got {self.k}")

    @classmethod
    def binary(cls, p: float, q: float) -> "ContingencyMatrix":
        return cls(np.array([[1.0 - p, p], [q, 1.0 - q]]))

    @classmethod
    def identity(cls, k: int) -> "ContingencyMatrix":
        return cls(np.eye(k))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ContingencyMatrix) and np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        return hash(self.rows.tobytes())


@dataclass(frozen=True, eq=False)
class CorrectionMatrix:
    matrix: np.ndarray
    condition_number: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _read_only(self.matrix))

    @property
    def k(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class CountsVector:
    counts: np.ndarray
    n_total: Optional[float] = None
    is_corrected: bool = False

    def __post_init__(self) -> None:
        counts: np.ndarray = _read_only(self.counts)
        if counts.ndim != 1:
            raise DimensionMismatchException(f"Counts must be a vector, got shape {counts.shape}")
        n_total: float = float(counts.sum()) if self.n_total is None else float(self.n_total)

        if not np.all(np.isfinite(counts)):
            raise NegativeEntryException("Counts must be finite")
        if not self.is_corrected:
            if np.any(counts < 0):
                raise NegativeEntryException(f"Counts must be non-negative: {counts.tolist()}")
            if abs(float(counts.sum()) - n_total) > constants.COUNT_SUM_TOLERANCE * max(n_total, 1.0):
                raise RowSumViolationException(f"Counts sum to {counts.sum()!r}, expected {n_total!r}")

        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n_total", n_total)

    @property
    def k(self) -> int:
        return int(self.counts.shape[0])

    @property
    def base_rates(self) -> np.ndarray:
        if self.n_total == 0:
            return np.full(self.k, np.nan)
        return self.counts / self.n_total


@dataclass(frozen=True, eq=False)
class AggregateVector:
    sums: np.ndarray

    def __post_init__(self) -> None:
        sums: np.ndarray = _read_only(self.sums)
        if sums.ndim != 1:
            raise DimensionMismatchException(f"Aggregates must be a vector, got shape {sums.shape}")
        object.__setattr__(self, "sums", sums)

    @property
    def k(self) -> int:
        return int(self.sums.shape[0])

    def to_list(self) -> List[float]:
        return [float(value) for value in self.sums]


@dataclass(frozen=True)
class LabeledPair:
    true_class: ClassIndex
    predicted_class: ClassIndex


@dataclass(frozen=True)
class TargetRecord:
    predicted_class: ClassIndex
    y: float


@dataclass(frozen=True, eq=False)
class ConfusionCounts:
    cells: np.ndarray
    row_totals: np.ndarray = field(init=False)
    total: int = field(init=False)

    def __post_init__(self) -> None:
        cells: np.ndarray = np.array(self.cells, dtype=np.int64, copy=True)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
            raise DimensionMismatchException(f"Confusion counts must be square, got shape {cells.shape}")
        if np.any(cells < 0):
            raise NegativeEntryException("Confusion counts must be non-negative")
        cells.setflags(write=False)
        row_totals: np.ndarray = cells.sum(axis=1)
        row_totals.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "row_totals", row_totals)
        object.__setattr__(self, "total", int(row_totals.sum()))

    @property
    def k(self) -> int:
        return int(self.cells.shape[0])

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        if other.k != self.k:
            raise DimensionMismatchException(f"Cannot add {self.k}-class and {other.k}-class counts")
        return ConfusionCounts(self.cells + other.cells)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConfusionCounts) and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash(self.cells.tobytes())


@dataclass(frozen=True, eq=False)
class ModelParameters:
    contingency: ContingencyMatrix
    base_rates: np.ndarray

    def __post_init__(self) -> None:
        base_rates: np.ndarray = _read_only(self.base_rates)
        if base_rates.shape != (self.contingency.k,):
            raise DimensionMismatchException(f"Expected {self.contingency.k} base rates, got shape {base_rates.shape}")
        if np.any(base_rates < 0) or abs(float(base_rates.sum()) - 1.0) > constants.ROW_SUM_TOLERANCE:
            raise RowSumViolationException(f"Base rates must lie on the simplex: {base_rates.tolist()}")
        object.__setattr__(self, "base_rates", base_rates)

    @property
    def k(self) -> int:
        return self.contingency.k

    @classmethod
    def binary(cls, p: float, q: float, positive_base_rate: float) -> "ModelParameters":
        return cls(ContingencyMatrix.binary(p, q), np.array([positive_base_rate, 1.0 - positive_base_rate]))


def get_pairs(true_classes: Sequence[int], predicted_classes: Sequence[int], k: int) -> List[LabeledPair]:
    return [LabeledPair(get_class_index(true_class, k), get_class_index(predicted_class, k)) for true_class, predicted_class in zip(true_classes, predicted_classes)]
