import math

import numpy as np
from scipy.special import gammaln, xlogy

from aggcorrect.inference import constants
from aggcorrect.inference.constants import PriorName
from aggcorrect.inference.exceptions import BoundaryParameterException, MissingHyperparametersException
from aggcorrect.inference.models import DirichletProduct, PosteriorSpec
from aggcorrect.model_core import constants as model_core_constants
from aggcorrect.model_core.exceptions import InvalidKException, DimensionMismatchException
from aggcorrect.model_core.models import ConfusionCounts, ContingencyMatrix, ModelParameters


def _assert_valid_k(k: int) -> None:
    if k < model_core_constants.MINIMUM_NUMBER_OF_CLASSES:
        raise InvalidKException(f"At least {model_core_constants.MINIMUM_NUMBER_OF_CLASSES} classes are required, got {k}")


def prior_uniform(k: int) -> DirichletProduct:
    _assert_valid_k(k)
    return DirichletProduct(np.full((k, k), constants.UNIFORM_CONCENTRATION), np.full(k, constants.UNIFORM_CONCENTRATION), PriorName.UNIFORM.value)


def prior_jeffreys(k: int) -> DirichletProduct:
    _assert_valid_k(k)
    return DirichletProduct(np.full((k, k), constants.JEFFREYS_ROW_CONCENTRATION), np.full(k, k / 2.0), PriorName.JEFFREYS.value)


def prior_custom(alpha: np.ndarray, gamma: np.ndarray) -> DirichletProduct:
    prior: DirichletProduct = DirichletProduct(alpha, gamma, PriorName.CUSTOM.value)
    _assert_valid_k(prior.k)
    return prior


def get_prior(prior_name: PriorName, k: int) -> DirichletProduct:
    if prior_name == PriorName.UNIFORM:
        return prior_uniform(k)
    elif prior_name == PriorName.JEFFREYS:
        return prior_jeffreys(k)
    raise MissingHyperparametersException("Custom priors need explicit hyperparameters, use prior_custom")


def log_likelihood(parameters: ModelParameters, counts: ConfusionCounts) -> float:
    if parameters.k != counts.k:
        raise DimensionMismatchException(f"{parameters.k}-class parameters with {counts.k}-class counts")
    cell_probabilities: np.ndarray = parameters.contingency.rows * parameters.base_rates[:, None]
    return float(xlogy(counts.cells, cell_probabilities).sum())


def posterior_update(prior: DirichletProduct, counts: ConfusionCounts) -> PosteriorSpec:
    return PosteriorSpec(prior, counts)


def posterior_mean(spec: PosteriorSpec) -> ModelParameters:
    alpha: np.ndarray = spec.posterior.alpha
    gamma: np.ndarray = spec.posterior.gamma
    return ModelParameters(ContingencyMatrix(alpha / alpha.sum(axis=1, keepdims=True)), gamma / gamma.sum())


def _dirichlet_log_density(concentrations: np.ndarray, points: np.ndarray) -> np.ndarray:
    normalisation: np.ndarray = gammaln(concentrations.sum(axis=-1)) - gammaln(concentrations).sum(axis=-1)
    return normalisation + xlogy(concentrations - 1.0, points).sum(axis=-1)


def log_density(prior: DirichletProduct, parameters: ModelParameters) -> float:
    if prior.k != parameters.k:
        raise DimensionMismatchException(f"{prior.k}-class prior evaluated at {parameters.k}-class parameters")
    rows_log_density: float = float(_dirichlet_log_density(prior.alpha, parameters.contingency.rows).sum())
    return rows_log_density + float(_dirichlet_log_density(prior.gamma, parameters.base_rates))


def jeffreys_binary_density(p: float, q: float) -> float:
    return 1.0 / (math.pi ** 2 * math.sqrt(p * (1.0 - p) * q * (1.0 - q)))


def fim_log_det(parameters: ModelParameters) -> float:
    rows: np.ndarray = parameters.contingency.rows
    base_rates: np.ndarray = parameters.base_rates
    if np.any(rows <= 0) or np.any(base_rates <= 0):
        raise BoundaryParameterException("The Fisher information is only finite in the interior of the parameter space")
    return float(-np.log(rows).sum() + (parameters.k - 2) * np.log(base_rates).sum())


def score_vector(parameters: ModelParameters, true_class: int, predicted_class: int) -> np.ndarray:
    #   free parameters: the off-diagonal p_gh of each row g, then beta_0 .. beta_{K-2}
    k: int = parameters.k
    rows: np.ndarray = parameters.contingency.rows
    base_rates: np.ndarray = parameters.base_rates
    score: np.ndarray = np.zeros(k * (k - 1) + k - 1)

    position: int = true_class * (k - 1)
    for column in range(k):
        if column == true_class:
            continue
        if predicted_class == column:
            score[position] = 1.0 / rows[true_class, column]
        elif predicted_class == true_class:
            score[position] = -1.0 / rows[true_class, true_class]
        position = position + 1

    if true_class < k - 1:
        score[k * (k - 1) + true_class] = 1.0 / base_rates[true_class]
    else:
        score[k * (k - 1):] = -1.0 / base_rates[k - 1]
    return score


def fisher_information_matrix(parameters: ModelParameters) -> np.ndarray:
    k: int = parameters.k
    dimension: int = k * k - 1
    information: np.ndarray = np.zeros((dimension, dimension))
    for true_class in range(k):
        for predicted_class in range(k):
            probability: float = float(parameters.base_rates[true_class] * parameters.contingency.rows[true_class, predicted_class])
            if probability == 0:
                continue
            score: np.ndarray = score_vector(parameters, true_class, predicted_class)
            information = information + probability * np.outer(score, score)
    return information
