import enum
from typing import List

from aggcorrect.model_core import constants as model_core_constants


class Method(enum.Enum):
    NONE: str = "none"
    BASELINE: str = "baseline"
    BAYES_UNIFORM: str = "bayes-uniform"
    BAYES_JEFFREYS: str = "bayes-jeffreys"
    BAYES_UNIFORM_CONSTRAINED: str = "bayes-uniform-constrained"
    BAYES_JEFFREYS_CONSTRAINED: str = "bayes-jeffreys-constrained"


class YModelKind(enum.Enum):
    CONSTANT: str = "constant"
    LOGNORMAL: str = "lognormal"
    EMPIRICAL: str = "empirical"


class PeculiarConfusionTable(enum.Enum):
    RATE_CONSISTENT: str = "rate_consistent"
    PRINTED: str = "printed"


TARGET_CLASS_INDEX: int = model_core_constants.POSITIVE_CLASS_INDEX

#   Surrogate turnover distribution, log-EUR
DEFAULT_LOGNORMAL_MU: float = 11.0
DEFAULT_LOGNORMAL_SIGMA: float = 2.0

#   Random stream keys under the experiment seed
STREAM_POPULATION: int = 0
STREAM_POPULATION_PREDICTIONS: int = 1
STREAM_TEST_SET: int = 2
STREAM_SAMPLER: int = 3

PECULIAR_CLASS_LABELS: List[str] = ["webshop", "other"]
PECULIAR_PREDICTED_COUNTS: List[float] = [10.0, 90.0]
PECULIAR_P: float = 0.2
PECULIAR_Q: float = 0.4
#   TP=4, FN=2 / FP=1, TN=2 as printed (n=9, p=1/3, q=1/3)
PECULIAR_PRINTED_COUNTS: List[List[int]] = [[4, 2], [1, 2]]
#   n=10 table reproducing p=0.2 and q=0.4: TP=4, FN=1 / FP=2, TN=3
PECULIAR_RATE_CONSISTENT_COUNTS: List[List[int]] = [[4, 1], [2, 3]]
PECULIAR_DEFAULT_RESOLUTION: int = 100_000
PECULIAR_DEFAULT_SEED: int = 2019
STREAM_CONVERGENCE: int = 4
STREAM_COVARIANCE: int = 5
