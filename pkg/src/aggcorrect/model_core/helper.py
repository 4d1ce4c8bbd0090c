from typing import Tuple

import numpy as np

from aggcorrect.model_core import constants


class CorrectionHelper:

    @staticmethod
    def get_one_norm(matrices: np.ndarray) -> np.ndarray:
        return np.abs(matrices).sum(axis=-2).max(axis=-1)

    @staticmethod
    def invert_transposes(rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        transposes: np.ndarray = np.swapaxes(rows, -1, -2)
        k: int = transposes.shape[-1]
        determinants: np.ndarray = np.linalg.det(transposes)
        is_invertible: np.ndarray = np.abs(determinants) >= constants.DETERMINANT_THRESHOLD

        safe_transposes: np.ndarray = np.where(is_invertible[..., None, None], transposes, np.eye(k))
        inverses: np.ndarray = np.linalg.inv(safe_transposes)

        condition_numbers: np.ndarray = CorrectionHelper.get_one_norm(transposes) * CorrectionHelper.get_one_norm(inverses)
        condition_numbers = np.where(is_invertible, condition_numbers, np.inf)
        is_invertible = is_invertible & (condition_numbers <= constants.CONDITION_NUMBER_THRESHOLD)

        inverses = np.where(is_invertible[..., None, None], inverses, np.eye(k))
        return inverses, is_invertible, condition_numbers

    @staticmethod
    def correct(inverses: np.ndarray, vector: np.ndarray) -> np.ndarray:
        return np.einsum("mij,j->mi", inverses, vector)
