from typing import Tuple

import numpy as np

from aggcorrect.inference.models import DirichletProduct
from aggcorrect.sampling.exceptions import NonPositiveConcentrationException


class SamplingHelper:
    @staticmethod
    def get_generator(seed: int, *keys: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(keys))))

    @staticmethod
    def derive_seed(seed: int, *keys: int) -> int:
        return int(np.random.SeedSequence(seed, spawn_key=tuple(keys)).generate_state(1, dtype=np.uint64)[0])

    @staticmethod
    def draw_dirichlet(concentrations: np.ndarray, rng: np.random.Generator, size: int) -> np.ndarray:
        #   numpy's gamma sampler is exact for shapes below one
        concentrations = np.asarray(concentrations, dtype=float)
        if concentrations.ndim != 1 or np.any(~np.isfinite(concentrations)) or np.any(concentrations <= 0):
            raise NonPositiveConcentrationException(f"Dirichlet concentrations must be strictly positive: {concentrations.tolist()}")

        variates: np.ndarray = rng.standard_gamma(concentrations, size=(size, concentrations.shape[0]))
        totals: np.ndarray = variates.sum(axis=1, keepdims=True)
        #   every variate underflowing to zero only happens for concentrations far below the Jeffreys 1/2
        while np.any(totals == 0):
            empty: np.ndarray = totals[:, 0] == 0
            variates[empty] = rng.standard_gamma(concentrations, size=(int(empty.sum()), concentrations.shape[0]))
            totals = variates.sum(axis=1, keepdims=True)
        return variates / totals

    @staticmethod
    def draw_product(distribution: DirichletProduct, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        rows: np.ndarray = np.stack([SamplingHelper.draw_dirichlet(distribution.alpha[row], rng, size) for row in range(distribution.k)], axis=1)
        base_rates: np.ndarray = SamplingHelper.draw_dirichlet(distribution.gamma, rng, size)
        return rows, base_rates
