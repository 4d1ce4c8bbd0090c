from dataclasses import dataclass

import numpy as np

from aggcorrect.constraints import constants
from aggcorrect.constraints.exceptions import InvalidRegionException
from aggcorrect.model_core.models import CountsVector


@dataclass(frozen=True)
class ConstraintRegion:
    v_hat: CountsVector
    tolerance: float = constants.DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if self.v_hat.is_corrected or np.any(self.v_hat.counts < 0):
            raise InvalidRegionException("The predicted counts must be non-negative")
        if self.v_hat.n_total is None or self.v_hat.n_total <= 0:
            raise InvalidRegionException("The predicted counts must cover at least one object")

    @property
    def k(self) -> int:
        return self.v_hat.k

    @property
    def n_total(self) -> float:
        return float(self.v_hat.n_total)

    @property
    def base_rates(self) -> np.ndarray:
        return self.v_hat.base_rates
