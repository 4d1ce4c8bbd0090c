import math
from typing import Any, List, Sequence, Tuple

import numpy as np

from aggcorrect.model_core import constants
from aggcorrect.model_core.exceptions import SingularMatrixException, DimensionMismatchException, NonFiniteYException, IndexOutOfRangeException
from aggcorrect.model_core.helper import CorrectionHelper
from aggcorrect.model_core.models import ContingencyMatrix, CorrectionMatrix, CountsVector, AggregateVector, LabeledPair, TargetRecord, ConfusionCounts, \
    ModelParameters, ClassIndex, get_class_index


def validate_contingency(raw_matrix: Any) -> ContingencyMatrix:
    return ContingencyMatrix(np.asarray(raw_matrix, dtype=float))


def invert_transpose(contingency: ContingencyMatrix) -> CorrectionMatrix:
    inverses, is_invertible, condition_numbers = CorrectionHelper.invert_transposes(contingency.rows[None, :, :])
    if not is_invertible[0]:
        raise SingularMatrixException(
            f"P^T is not invertible (det={np.linalg.det(contingency.rows.T)!r}, condition number={condition_numbers[0]!r})")
    residual: float = float(np.abs(inverses[0] @ contingency.rows.T - np.eye(contingency.k)).max())
    if residual > constants.INVERSE_TOLERANCE:
        raise SingularMatrixException(f"Q P^T differs from the identity by {residual!r}; P^T is numerically singular")
    return CorrectionMatrix(inverses[0], float(condition_numbers[0]))


def confusion_from_pairs(pairs: Sequence[LabeledPair], k: int) -> ConfusionCounts:
    return confusion_from_classes(np.asarray([pair.true_class for pair in pairs], dtype=np.int64), np.asarray([pair.predicted_class for pair in pairs], dtype=np.int64), k)


def confusion_from_classes(true_classes: np.ndarray, predicted_classes: np.ndarray, k: int) -> ConfusionCounts:
    if true_classes.shape != predicted_classes.shape:
        raise DimensionMismatchException(f"{len(true_classes)} true classes with {len(predicted_classes)} predictions")
    for classes in (true_classes, predicted_classes):
        out_of_range: np.ndarray = np.flatnonzero((classes < 0) | (classes >= k))
        if len(out_of_range) > 0:
            raise IndexOutOfRangeException(f"Pair {int(out_of_range[0])} has class index {int(classes[out_of_range[0]])} outside [0, {k})")

    cells: np.ndarray = np.zeros((k, k), dtype=np.int64)
    np.add.at(cells, (true_classes, predicted_classes), 1)
    return ConfusionCounts(cells)


def aggregate_by_predicted(records: Sequence[TargetRecord], k: int) -> Tuple[AggregateVector, CountsVector]:
    predicted_classes: List[int] = []
    y_values: List[float] = []
    for record_number, record in enumerate(records):
        predicted_classes.append(get_class_index(record.predicted_class, k))
        if not math.isfinite(record.y):
            raise NonFiniteYException(f"Record {record_number} has non-finite y: {record.y!r}")
        y_values.append(float(record.y))

    counts: np.ndarray = np.bincount(np.asarray(predicted_classes, dtype=np.int64), minlength=k).astype(float)
    sums: np.ndarray = np.bincount(np.asarray(predicted_classes, dtype=np.int64), weights=np.asarray(y_values, dtype=float), minlength=k)
    return AggregateVector(sums), CountsVector(counts, float(len(records)))


def expected_naive_aggregate(contingency: ContingencyMatrix, aggregates: AggregateVector) -> AggregateVector:
    if contingency.k != aggregates.k:
        raise DimensionMismatchException(f"{contingency.k}-class contingency matrix with {aggregates.k}-class aggregates")
    return AggregateVector(contingency.rows.T @ aggregates.sums)


def relative_bias(contingency: ContingencyMatrix, aggregates: AggregateVector, n_total: float) -> np.ndarray:
    return (expected_naive_aggregate(contingency, aggregates).sums - aggregates.sums) / n_total


def unbiased_base_rates(contingency: ContingencyMatrix) -> np.ndarray:
    #   minimum-norm solution when it is not unique, for instance P = I
    system: np.ndarray = np.vstack([contingency.rows.T - np.eye(contingency.k), np.ones((1, contingency.k))])
    target: np.ndarray = np.concatenate([np.zeros(contingency.k), [1.0]])
    solution: np.ndarray = np.linalg.lstsq(system, target, rcond=None)[0]
    return solution


def apply_correction(correction: CorrectionMatrix, vector: np.ndarray) -> np.ndarray:
    if correction.k != vector.shape[0]:
        raise DimensionMismatchException(f"{correction.k}-class correction with a vector of length {vector.shape[0]}")
    return correction.matrix @ vector
