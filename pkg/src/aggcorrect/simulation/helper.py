from typing import Tuple

import numpy as np
import pandas

from aggcorrect.model_core.exceptions import DimensionMismatchException
from aggcorrect.simulation.exceptions import InvalidExperimentException


class SimulationHelper:
    @staticmethod
    def get_class_counts(base_rates: np.ndarray, population_size: int) -> np.ndarray:
        expected: np.ndarray = np.asarray(base_rates, dtype=float) * population_size
        counts: np.ndarray = np.floor(expected).astype(np.int64)
        shortfall: int = population_size - int(counts.sum())
        if shortfall > 0:
            order: np.ndarray = np.argsort(-(expected - counts), kind="stable")
            counts[order[:shortfall]] += 1
        return counts

    @staticmethod
    def get_sample_covariance(samples: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if samples.ndim != 2 or samples.shape[0] < 2:
            raise DimensionMismatchException(f"Need at least two rows to estimate a covariance, got shape {samples.shape}")
        centred: np.ndarray = samples - samples.mean(axis=0)
        products: np.ndarray = centred[:, :, None] * centred[:, None, :]
        number_of_samples: int = samples.shape[0]
        covariance: np.ndarray = products.sum(axis=0) / (number_of_samples - 1)
        standard_errors: np.ndarray = products.std(axis=0, ddof=1) / np.sqrt(number_of_samples)
        return covariance, standard_errors

    @staticmethod
    def read_y_values(path: str) -> np.ndarray:
        try:
            data: pandas.DataFrame = pandas.read_csv(path)
        except FileNotFoundError as e:
            raise InvalidExperimentException(f"Empirical y file not found: {path}") from e
        if "y" not in data.columns:
            raise InvalidExperimentException(f"Empirical y file {path} has no 'y' column")

        y_values: np.ndarray = pandas.to_numeric(data["y"], errors="coerce").to_numpy(dtype=float)
        if len(y_values) == 0 or not np.all(np.isfinite(y_values)):
            raise InvalidExperimentException(f"Empirical y file {path} must hold at least one value and only finite numbers")
        return y_values
