import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from aggcorrect import estimators, inference, model_core
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.estimators.exceptions import EmptyRowException
from aggcorrect.estimators.models import EstimatorReport
from aggcorrect.global_common import EstimationException, constants as global_constants, get_enum_from_value, run_in_parallel
from aggcorrect.inference.constants import PriorName
from aggcorrect.inference.models import DirichletProduct, PosteriorSpec
from aggcorrect.logger import logger, performance
from aggcorrect.model_core.exceptions import DimensionMismatchException, IndexOutOfRangeException
from aggcorrect.model_core.models import AggregateVector, ConfusionCounts, ContingencyMatrix, CountsVector
from aggcorrect.sampling.helper import SamplingHelper
from aggcorrect.sampling.models import SamplerConfig
from aggcorrect.simulation import constants
from aggcorrect.simulation.constants import Method, PeculiarConfusionTable, YModelKind
from aggcorrect.simulation.helper import SimulationHelper
from aggcorrect.simulation.models import ConvergencePoint, CovarianceEstimate, ExperimentResult, ExperimentSpec, MethodScore, PeculiarSpec, Population, \
    PopulationSpec

_BAYES_METHODS: Dict[Method, Tuple[PriorName, bool]] = {
    Method.BAYES_UNIFORM: (PriorName.UNIFORM, False),
    Method.BAYES_JEFFREYS: (PriorName.JEFFREYS, False),
    Method.BAYES_UNIFORM_CONSTRAINED: (PriorName.UNIFORM, True),
    Method.BAYES_JEFFREYS_CONSTRAINED: (PriorName.JEFFREYS, True),
}


def simulate_predictions(true_classes: np.ndarray, contingency: ContingencyMatrix, rng: np.random.Generator) -> np.ndarray:
    true_classes = np.asarray(true_classes, dtype=np.int64)
    out_of_range: np.ndarray = np.flatnonzero((true_classes < 0) | (true_classes >= contingency.k))
    if len(out_of_range) > 0:
        raise IndexOutOfRangeException(f"Object {int(out_of_range[0])} has class index {int(true_classes[out_of_range[0]])} outside [0, {contingency.k})")

    cumulative: np.ndarray = np.cumsum(contingency.rows, axis=1)[true_classes]
    uniforms: np.ndarray = rng.random(true_classes.shape[0])
    predicted: np.ndarray = (uniforms[:, None] >= cumulative).sum(axis=1)
    return np.minimum(predicted, contingency.k - 1)


def base_rate_covariance(contingency: ContingencyMatrix, base_rates: np.ndarray, population_size: int) -> np.ndarray:
    base_rates = np.asarray(base_rates, dtype=float)
    if base_rates.shape != (contingency.k,):
        raise DimensionMismatchException(f"{base_rates.shape[0]} base rates for a {contingency.k}-class contingency matrix")
    rows: np.ndarray = contingency.rows
    return (np.diag(rows.T @ base_rates) - rows.T @ np.diag(base_rates) @ rows) / population_size


def empirical_base_rate_covariance(contingency: ContingencyMatrix, base_rates: np.ndarray, population_size: int, replications: int,
                                   seed: int) -> CovarianceEstimate:
    base_rates = np.asarray(base_rates, dtype=float)
    if base_rates.shape != (contingency.k,):
        raise DimensionMismatchException(f"{base_rates.shape[0]} base rates for a {contingency.k}-class contingency matrix")
    rng: np.random.Generator = SamplingHelper.get_generator(seed, constants.STREAM_COVARIANCE)
    class_counts: np.ndarray = SimulationHelper.get_class_counts(base_rates, population_size)

    predicted_counts: np.ndarray = np.zeros((replications, contingency.k), dtype=np.int64)
    for true_class in range(contingency.k):
        predicted_counts += rng.multinomial(int(class_counts[true_class]), contingency.rows[true_class], size=replications)

    covariance, standard_errors = SimulationHelper.get_sample_covariance(predicted_counts / population_size)
    return CovarianceEstimate(covariance, standard_errors, replications)


def generate_population(spec: PopulationSpec) -> Population:
    rng: np.random.Generator = SamplingHelper.get_generator(spec.seed, constants.STREAM_POPULATION)
    class_counts: np.ndarray = SimulationHelper.get_class_counts(np.asarray(spec.base_rates, dtype=float), spec.population_size)
    true_classes: np.ndarray = rng.permutation(np.repeat(np.arange(spec.k), class_counts))

    y_model_kind: YModelKind = spec.y_model.y_model_kind
    if y_model_kind == YModelKind.CONSTANT:
        y: np.ndarray = np.full(spec.population_size, spec.y_model.value, dtype=float)
    elif y_model_kind == YModelKind.LOGNORMAL:
        y = rng.lognormal(spec.y_model.mu, spec.y_model.sigma, spec.population_size)
    else:
        y = rng.choice(SimulationHelper.read_y_values(str(spec.y_model.path)), size=spec.population_size, replace=True)
    return Population(true_classes, y, spec.k)


def _estimate_target(method: Method, counts: ConfusionCounts, u_hat: AggregateVector, v_hat: CountsVector, sampler: SamplerConfig) -> Optional[float]:
    if method == Method.NONE:
        return float(u_hat.sums[constants.TARGET_CLASS_INDEX])

    try:
        if method == Method.BASELINE:
            estimate: AggregateVector = estimators.baseline_estimate(estimators.plug_in_contingency(counts), u_hat)
            return float(estimate.sums[constants.TARGET_CLASS_INDEX])

        prior_name, is_constrained = _BAYES_METHODS[method]
        spec: PosteriorSpec = inference.posterior_update(inference.get_prior(prior_name, counts.k), counts)
        region: Optional[ConstraintRegion] = ConstraintRegion(v_hat) if is_constrained else None
        return float(estimators.bayes_estimate(spec, u_hat, region, sampler).mean.sums[constants.TARGET_CLASS_INDEX])
    except (EmptyRowException, EstimationException) as e:
        logger.debug(f"{method.value} excluded from replication: {e}")
        return None


def _run_replication(spec: ExperimentSpec, population: Population, replication: int) -> Dict[Tuple[Method, int], Optional[float]]:
    contingency: ContingencyMatrix = spec.population.contingency_matrix
    experiment_seed: int = spec.sampler.seed

    #   population predictions do not depend on the test size, so the naive estimate is shared by every n
    predictions_rng: np.random.Generator = SamplingHelper.get_generator(experiment_seed, constants.STREAM_POPULATION_PREDICTIONS, replication)
    predicted: np.ndarray = simulate_predictions(population.true_classes, contingency, predictions_rng)
    u_hat: AggregateVector = AggregateVector(np.bincount(predicted, weights=population.y, minlength=population.k))
    v_hat: CountsVector = CountsVector(np.bincount(predicted, minlength=population.k).astype(float))

    estimates: Dict[Tuple[Method, int], Optional[float]] = {}
    for test_size in spec.test_sizes:
        test_rng: np.random.Generator = SamplingHelper.get_generator(experiment_seed, constants.STREAM_TEST_SET, replication, test_size)
        test_true_classes: np.ndarray = population.true_classes[test_rng.integers(0, population.population_size, size=test_size)]
        test_predicted: np.ndarray = simulate_predictions(test_true_classes, contingency, test_rng)
        counts: ConfusionCounts = model_core.confusion_from_classes(test_true_classes, test_predicted, population.k)

        for method_index, method in enumerate(spec.method_list):
            sampler: SamplerConfig = SamplerConfig(spec.sampler.resolution, spec.sampler.max_attempts_factor,
                                                   SamplingHelper.derive_seed(experiment_seed, constants.STREAM_SAMPLER, replication, test_size, method_index),
                                                   1)
            estimates[(method, test_size)] = _estimate_target(method, counts, u_hat, v_hat, sampler)
    return estimates


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    #   replications in which a method has no estimate are left out of that method's score
    start_time: float = time.time()
    population: Population = generate_population(spec.population)
    truth: float = float(population.aggregates[constants.TARGET_CLASS_INDEX])

    replication_estimates: List[Dict[Tuple[Method, int], Optional[float]]] = run_in_parallel(
        lambda replication: _run_replication(spec, population, replication), list(range(spec.replications)), spec.sampler.workers)

    scores: List[MethodScore] = []
    for test_size in spec.test_sizes:
        for method in spec.method_list:
            score: MethodScore = MethodScore.get(method, test_size, [estimates[(method, test_size)] for estimates in replication_estimates], truth)
            if score.replications_excluded > 0:
                logger.warning(f"{method.value} at n={test_size}: {score.replications_excluded} of {spec.replications} replications excluded")
            scores.append(score)

    performance(global_constants.EXECUTION_TYPE_SIMULATION, "Experiment", start_time,
                f"B={spec.replications} n={spec.test_sizes} methods={spec.methods}")
    return ExperimentResult(scores, population.population_size, spec.replications, spec.sampler.seed)


def peculiar_example(spec: PeculiarSpec = PeculiarSpec()) -> EstimatorReport:
    #   the baseline always uses the stated rates (0.2, 0.4), giving (-75, 175)
    table: PeculiarConfusionTable = get_enum_from_value(spec.confusion_table, PeculiarConfusionTable)
    cells: List[List[int]] = constants.PECULIAR_PRINTED_COUNTS if table == PeculiarConfusionTable.PRINTED else constants.PECULIAR_RATE_CONSISTENT_COUNTS
    counts: ConfusionCounts = ConfusionCounts(np.asarray(cells))
    u_hat: AggregateVector = AggregateVector(np.asarray(constants.PECULIAR_PREDICTED_COUNTS))
    v_hat: CountsVector = CountsVector(np.asarray(constants.PECULIAR_PREDICTED_COUNTS))

    cfg: SamplerConfig = SamplerConfig(resolution=spec.resolution, seed=spec.seed, workers=spec.workers)
    return estimators.get_report(inference.prior_jeffreys(counts.k), counts, u_hat, v_hat, cfg, True, constants.PECULIAR_CLASS_LABELS,
                                 ContingencyMatrix.binary(constants.PECULIAR_P, constants.PECULIAR_Q))


def posterior_convergence(p: float, q: float, positive_base_rate: float, test_sizes: List[int], replications: int, prior_name: PriorName = PriorName.JEFFREYS,
                          seed: int = 0) -> List[ConvergencePoint]:
    contingency: ContingencyMatrix = ContingencyMatrix.binary(p, q)
    base_rates: np.ndarray = np.array([positive_base_rate, 1.0 - positive_base_rate])
    prior: DirichletProduct = inference.get_prior(prior_name, contingency.k)

    points: List[ConvergencePoint] = []
    for test_size in test_sizes:
        errors: np.ndarray = np.empty(replications)
        for replication in range(replications):
            rng: np.random.Generator = SamplingHelper.get_generator(seed, constants.STREAM_CONVERGENCE, test_size, replication)
            true_classes: np.ndarray = rng.choice(contingency.k, size=test_size, p=base_rates)
            counts: ConfusionCounts = model_core.confusion_from_classes(true_classes, simulate_predictions(true_classes, contingency, rng), contingency.k)
            errors[replication] = abs(inference.posterior_mean(inference.posterior_update(prior, counts)).contingency.p - p)
        points.append(ConvergencePoint(test_size, float(np.median(errors))))
    return points
