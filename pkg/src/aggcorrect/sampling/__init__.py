import time
from dataclasses import dataclass
from typing import Optional, List

import numpy as np

from aggcorrect import constraints
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.global_common import constants as global_constants, run_in_parallel
from aggcorrect.inference.models import PosteriorSpec
from aggcorrect.logger import logger, performance
from aggcorrect.model_core.exceptions import DimensionMismatchException
from aggcorrect.model_core.helper import CorrectionHelper
from aggcorrect.model_core.models import ContingencyMatrix, ModelParameters
from aggcorrect.sampling import constants
from aggcorrect.sampling.exceptions import ConstraintStarvationException
from aggcorrect.sampling.helper import SamplingHelper
from aggcorrect.sampling.models import SamplerConfig, PosteriorDraws


def sample_dirichlet(concentrations: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return SamplingHelper.draw_dirichlet(np.asarray(concentrations, dtype=float), rng, 1)[0]


def sample_posterior_product(spec: PosteriorSpec, rng: np.random.Generator) -> ModelParameters:
    rows, base_rates = SamplingHelper.draw_product(spec.posterior, rng, 1)
    return ModelParameters(ContingencyMatrix(rows[0]), base_rates[0])


@dataclass
class _Chunk:
    rows: np.ndarray
    base_rates: np.ndarray
    is_accepted: np.ndarray


def _get_chunk(spec: PosteriorSpec, region: Optional[ConstraintRegion], cfg: SamplerConfig, chunk_index: int) -> _Chunk:
    size: int = max(0, min(constants.CHUNK_SIZE, cfg.max_total_attempts - chunk_index * constants.CHUNK_SIZE))
    rng: np.random.Generator = SamplingHelper.get_generator(cfg.seed, chunk_index)
    rows, base_rates = SamplingHelper.draw_product(spec.posterior, rng, constants.CHUNK_SIZE)
    rows, base_rates = rows[:size], base_rates[:size]

    if region is None:
        is_accepted: np.ndarray = CorrectionHelper.invert_transposes(rows)[1]
    else:
        is_accepted = constraints.contains_batch(region, rows)
    return _Chunk(rows, base_rates, is_accepted)


def rejection_sample(spec: PosteriorSpec, region: Optional[ConstraintRegion], cfg: SamplerConfig) -> PosteriorDraws:
    #   chunks are seeded by (seed, chunk index) and merged in chunk order, whatever cfg.workers is
    if region is not None and region.k != spec.k:
        raise DimensionMismatchException(f"{region.k}-class region with a {spec.k}-class posterior")
    start_time: float = time.time()

    accepted_rows: List[np.ndarray] = []
    accepted_base_rates: List[np.ndarray] = []
    accepted: int = 0
    attempted: int = 0
    next_chunk_index: int = 0
    number_of_chunks: int = -(-cfg.max_total_attempts // constants.CHUNK_SIZE)

    while accepted < cfg.resolution and next_chunk_index < number_of_chunks:
        chunk_indices: List[int] = list(range(next_chunk_index, min(next_chunk_index + cfg.workers, number_of_chunks)))
        chunks: List[_Chunk] = run_in_parallel(lambda chunk_index: _get_chunk(spec, region, cfg, chunk_index), chunk_indices, cfg.workers)
        next_chunk_index = chunk_indices[-1] + 1

        for chunk in chunks:
            accepted_positions: np.ndarray = np.flatnonzero(chunk.is_accepted)
            still_needed: int = cfg.resolution - accepted
            if len(accepted_positions) >= still_needed:
                accepted_positions = accepted_positions[:still_needed]
                attempted = attempted + int(accepted_positions[-1]) + 1
            else:
                attempted = attempted + len(chunk.is_accepted)

            accepted_rows.append(chunk.rows[accepted_positions])
            accepted_base_rates.append(chunk.base_rates[accepted_positions])
            accepted = accepted + len(accepted_positions)
            if accepted == cfg.resolution:
                break

    if accepted < cfg.resolution:
        raise ConstraintStarvationException(accepted, attempted, cfg.resolution)

    draws: PosteriorDraws = PosteriorDraws(np.concatenate(accepted_rows), np.concatenate(accepted_base_rates), accepted, attempted, region is not None)
    if draws.acceptance_rate < constants.LOW_ACCEPTANCE_RATE_WARNING:
        logger.warning(f"Low acceptance rate {draws.acceptance_rate:.4f}: the data and prior leave little posterior mass in the admissible region")
    performance(global_constants.EXECUTION_TYPE_SAMPLING, "Rejection Sampling", start_time, f"{accepted} accepted of {attempted} attempted")
    return draws
