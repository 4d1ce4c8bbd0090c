import json
from dataclasses import dataclass, field, asdict
from typing import List, Optional

import numpy as np

from aggcorrect.global_common import get_enum_from_value
from aggcorrect.model_core.models import ContingencyMatrix
from aggcorrect.sampling.models import SamplerConfig
from aggcorrect.simulation import constants
from aggcorrect.simulation.constants import Method, YModelKind, PeculiarConfusionTable
from aggcorrect.simulation.exceptions import InvalidExperimentException


@dataclass(frozen=True)
class YModelSpec:
    kind: str = YModelKind.CONSTANT.value
    value: float = 1.0
    mu: float = constants.DEFAULT_LOGNORMAL_MU
    sigma: float = constants.DEFAULT_LOGNORMAL_SIGMA
    path: Optional[str] = None

    def __post_init__(self) -> None:
        kind: YModelKind = get_enum_from_value(self.kind, YModelKind)
        if kind == YModelKind.LOGNORMAL and self.sigma <= 0:
            raise InvalidExperimentException(f"The lognormal sigma must be positive, got {self.sigma}")
        if kind == YModelKind.EMPIRICAL and self.path is None:
            raise InvalidExperimentException("An empirical y model needs a path to a CSV file with a 'y' column")

    @property
    def y_model_kind(self) -> YModelKind:
        return get_enum_from_value(self.kind, YModelKind)


@dataclass(frozen=True)
class PopulationSpec:
    population_size: int
    base_rates: List[float]
    contingency: List[List[float]]
    y_model: YModelSpec = field(default_factory=YModelSpec)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise InvalidExperimentException(f"population_size must be at least 1, got {self.population_size}")
        base_rates: np.ndarray = np.asarray(self.base_rates, dtype=float)
        if np.any(base_rates < 0) or abs(float(base_rates.sum()) - 1.0) > 1e-9:
            raise InvalidExperimentException(f"base_rates must lie on the simplex: {self.base_rates}")
        if len(self.base_rates) != self.contingency_matrix.k:
            raise InvalidExperimentException(f"{len(self.base_rates)} base rates for a {self.contingency_matrix.k}-class contingency matrix")

    @property
    def contingency_matrix(self) -> ContingencyMatrix:
        return ContingencyMatrix(np.asarray(self.contingency, dtype=float))

    @property
    def k(self) -> int:
        return len(self.base_rates)


@dataclass(frozen=True)
class ExperimentSpec:
    population: PopulationSpec
    test_sizes: List[int]
    methods: List[str]
    replications: int
    sampler: SamplerConfig = field(default_factory=SamplerConfig)

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise InvalidExperimentException(f"replications must be at least 1, got {self.replications}")
        if len(self.test_sizes) == 0 or any(test_size < 1 or test_size > self.population.population_size for test_size in self.test_sizes):
            raise InvalidExperimentException(f"Every test size must lie in [1, {self.population.population_size}], got {self.test_sizes}")
        if len(self.methods) == 0:
            raise InvalidExperimentException("At least one method is required")
        for method in self.methods:
            get_enum_from_value(method, Method)

    @property
    def method_list(self) -> List[Method]:
        return [get_enum_from_value(method, Method) for method in self.methods]


@dataclass(frozen=True)
class PeculiarSpec:
    resolution: int = constants.PECULIAR_DEFAULT_RESOLUTION
    seed: int = constants.PECULIAR_DEFAULT_SEED
    workers: int = 1
    confusion_table: str = PeculiarConfusionTable.RATE_CONSISTENT.value

    def __post_init__(self) -> None:
        get_enum_from_value(self.confusion_table, PeculiarConfusionTable)


@dataclass(frozen=True, eq=False)
class Population:
    true_classes: np.ndarray
    y: np.ndarray
    k: int

    @property
    def population_size(self) -> int:
        return int(self.true_classes.shape[0])

    @property
    def aggregates(self) -> np.ndarray:
        return np.bincount(self.true_classes, weights=self.y, minlength=self.k)


@dataclass
class MethodScore:
    method: str
    test_size: int
    bias: float
    variance: float
    mse: float
    truth: float
    replications_used: int
    replications_excluded: int

    @staticmethod
    def get(method: Method, test_size: int, estimates: List[Optional[float]], truth: float) -> "MethodScore":
        used: np.ndarray = np.asarray([estimate for estimate in estimates if estimate is not None], dtype=float)
        excluded: int = len(estimates) - len(used)
        if len(used) == 0:
            return MethodScore(method.value, test_size, float("nan"), float("nan"), float("nan"), truth, 0, excluded)

        errors: np.ndarray = used - truth
        return MethodScore(method.value, test_size, float(errors.mean()), float(used.var()), float(np.mean(errors ** 2)), truth, len(used), excluded)


@dataclass
class ConvergencePoint:
    test_size: int
    median_absolute_error: float


@dataclass
class ExperimentResult:
    scores: List[MethodScore]
    population_size: int
    replications: int
    seed: int

    def get_score(self, method: Method, test_size: int) -> MethodScore:
        return next(score for score in self.scores if score.method == method.value and score.test_size == test_size)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


@dataclass(frozen=True, eq=False)
class CovarianceEstimate:
    covariance: np.ndarray
    standard_errors: np.ndarray
    replications: int
