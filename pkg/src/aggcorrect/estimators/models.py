import json
import warnings
from dataclasses import dataclass, asdict, field
from typing import List, Optional, Dict, Any

import numpy as np
import pandas
from scipy import stats

from aggcorrect.estimators import constants
from aggcorrect.estimators.exceptions import EmptySamplesException
from aggcorrect.model_core.models import AggregateVector


@dataclass
class ClassSummary:
    class_label: str
    mean: float
    standard_deviation: float
    quantile_2_5: float
    quantile_25: float
    median: float
    quantile_75: float
    quantile_97_5: float
    skewness: float

    @staticmethod
    def get_all(samples: np.ndarray, class_labels: Optional[List[str]] = None) -> List["ClassSummary"]:
        if samples.ndim != 2 or samples.shape[0] == 0:
            raise EmptySamplesException("Cannot summarise an empty set of samples")
        class_labels = [str(index) for index in range(samples.shape[1])] if class_labels is None else class_labels

        means: np.ndarray = samples.mean(axis=0)
        standard_deviations: np.ndarray = samples.std(axis=0, ddof=1) if samples.shape[0] > 1 else np.zeros(samples.shape[1])
        quantiles: np.ndarray = np.quantile(samples, constants.SUMMARY_QUANTILES, axis=0)
        with warnings.catch_warnings(), np.errstate(invalid="ignore", divide="ignore"):
            warnings.simplefilter("ignore", RuntimeWarning)
            skewness: np.ndarray = np.nan_to_num(stats.skew(samples, axis=0), nan=0.0)

        return [ClassSummary(class_labels[index], float(means[index]), float(standard_deviations[index]), float(quantiles[0, index]), float(quantiles[1, index]),
                             float(quantiles[2, index]), float(quantiles[3, index]), float(quantiles[4, index]), float(skewness[index]))
                for index in range(samples.shape[1])]


@dataclass(frozen=True, eq=False)
class CorrectedAggregateDistribution:
    samples: np.ndarray
    is_constrained: bool
    accepted: int
    attempted: int

    def __post_init__(self) -> None:
        if self.samples.ndim != 2 or self.samples.shape[0] == 0:
            raise EmptySamplesException("A corrected aggregate distribution needs at least one sample")

    @property
    def resolution(self) -> int:
        return int(self.samples.shape[0])

    @property
    def k(self) -> int:
        return int(self.samples.shape[1])

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempted

    @property
    def mean(self) -> AggregateVector:
        return AggregateVector(self.samples.mean(axis=0))

    @property
    def median(self) -> AggregateVector:
        return AggregateVector(np.median(self.samples, axis=0))


@dataclass
class BaselineResult:
    estimate: Optional[List[float]]
    has_negative_component: bool
    failure: Optional[str] = None


@dataclass
class ReportMetadata:
    version: str
    prior: str
    resolution: int
    seed: int
    workers: int
    is_constrained: bool
    acceptance_rate: float
    accepted: int
    attempted: int
    class_labels: List[str]
    test_set_size: int
    population_size: float
    timestamp: str


@dataclass
class EstimatorReport:
    naive: List[float]
    baseline: BaselineResult
    bayes_mean: List[float]
    bayes_median: List[float]
    bayes_summary: List[ClassSummary]
    metadata: ReportMetadata
    distribution: Optional[CorrectedAggregateDistribution] = field(default=None, repr=False, compare=False)

    def get_dict(self) -> Dict[str, Any]:
        return {"naive": self.naive,
                "baseline": asdict(self.baseline),
                "bayes_mean": self.bayes_mean,
                "bayes_median": self.bayes_median,
                "bayes_summary": [asdict(summary) for summary in self.bayes_summary],
                "metadata": asdict(self.metadata)}

    def to_json(self) -> str:
        return json.dumps(self.get_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        table: pandas.DataFrame = pandas.DataFrame({
            "naive": self.naive,
            "baseline": self.baseline.estimate if self.baseline.estimate is not None else [float("nan")] * len(self.naive),
            "bayes_mean": [summary.mean for summary in self.bayes_summary],
            "bayes_sd": [summary.standard_deviation for summary in self.bayes_summary],
            "q2.5%": [summary.quantile_2_5 for summary in self.bayes_summary],
            "median": [summary.median for summary in self.bayes_summary],
            "q97.5%": [summary.quantile_97_5 for summary in self.bayes_summary],
        }, index=pandas.Index(self.metadata.class_labels, name="class"))

        header: str = (f"prior={self.metadata.prior} constrained={self.metadata.is_constrained} R={self.metadata.resolution} seed={self.metadata.seed} "
                       f"acceptance_rate={self.metadata.acceptance_rate:.4f}")
        if self.baseline.failure is not None:
            header = header + f"\nbaseline failed: {self.baseline.failure}"
        elif self.baseline.has_negative_component:
            header = header + "\nbaseline has negative components (not clamped)"
        return header + "\n" + table.to_string(float_format=lambda value: f"{value:,.4f}")
