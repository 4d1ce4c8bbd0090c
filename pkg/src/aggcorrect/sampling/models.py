from dataclasses import dataclass

import numpy as np

from aggcorrect.sampling import constants
from aggcorrect.sampling.exceptions import InvalidSamplerConfigException


@dataclass(frozen=True)
class SamplerConfig:
    resolution: int = constants.DEFAULT_RESOLUTION
    max_attempts_factor: int = constants.DEFAULT_MAX_ATTEMPTS_FACTOR
    seed: int = constants.DEFAULT_SEED
    workers: int = constants.DEFAULT_WORKERS
    #   0 means max_attempts_factor x resolution
    max_total_attempts: int = 0

    def __post_init__(self) -> None:
        if self.resolution < 1:
            raise InvalidSamplerConfigException(f"resolution must be at least 1, got {self.resolution}")
        if self.max_attempts_factor < 1:
            raise InvalidSamplerConfigException(f"max_attempts_factor must be at least 1, got {self.max_attempts_factor}")
        if self.workers < 1:
            raise InvalidSamplerConfigException(f"workers must be at least 1, got {self.workers}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidSamplerConfigException(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.max_total_attempts == 0:
            object.__setattr__(self, "max_total_attempts", self.max_attempts_factor * self.resolution)
        elif self.max_total_attempts < self.resolution:
            raise InvalidSamplerConfigException(f"max_total_attempts ({self.max_total_attempts}) must be at least the resolution ({self.resolution})")


@dataclass(frozen=True, eq=False)
class PosteriorDraws:
    rows: np.ndarray
    base_rates: np.ndarray
    accepted: int
    attempted: int
    is_constrained: bool

    @property
    def k(self) -> int:
        return int(self.rows.shape[-1])

    @property
    def rejected(self) -> int:
        return self.attempted - self.accepted

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempted
