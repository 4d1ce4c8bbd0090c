from dataclasses import dataclass, field

import numpy as np

from aggcorrect.inference.constants import PriorName
from aggcorrect.inference.exceptions import NonPositiveHyperparameterException
from aggcorrect.model_core.exceptions import DimensionMismatchException
from aggcorrect.model_core.models import ConfusionCounts


@dataclass(frozen=True, eq=False)
class DirichletProduct:
    alpha: np.ndarray
    gamma: np.ndarray
    name: str = PriorName.CUSTOM.value

    def __post_init__(self) -> None:
        alpha: np.ndarray = np.array(self.alpha, dtype=float, copy=True)
        gamma: np.ndarray = np.array(self.gamma, dtype=float, copy=True)
        if alpha.ndim != 2 or alpha.shape[0] != alpha.shape[1] or gamma.shape != (alpha.shape[0],):
            raise DimensionMismatchException(f"alpha must be K x K and gamma of length K, got {alpha.shape} and {gamma.shape}")
        if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(gamma))) or np.any(alpha <= 0) or np.any(gamma <= 0):
            raise NonPositiveHyperparameterException("All concentration parameters must be strictly positive and finite")
        alpha.setflags(write=False)
        gamma.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "gamma", gamma)

    @property
    def k(self) -> int:
        return int(self.alpha.shape[0])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DirichletProduct) and np.array_equal(self.alpha, other.alpha) and np.array_equal(self.gamma, other.gamma)

    def __hash__(self) -> int:
        return hash((self.alpha.tobytes(), self.gamma.tobytes()))


@dataclass(frozen=True, eq=False)
class PosteriorSpec:
    prior: DirichletProduct
    counts: ConfusionCounts
    posterior: DirichletProduct = field(init=False)

    def __post_init__(self) -> None:
        if self.prior.k != self.counts.k:
            raise DimensionMismatchException(f"{self.prior.k}-class prior with {self.counts.k}-class confusion counts")
        object.__setattr__(self, "posterior", DirichletProduct(
            self.prior.alpha + self.counts.cells,
            self.prior.gamma + self.counts.row_totals,
            self.prior.name))

    @property
    def k(self) -> int:
        return self.prior.k
