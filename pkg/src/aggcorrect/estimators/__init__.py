import datetime
import time
from typing import List, Optional, Sequence

import numpy as np

from aggcorrect import model_core, sampling, inference
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.estimators.exceptions import EmptyRowException
from aggcorrect.estimators.models import CorrectedAggregateDistribution, ClassSummary, BaselineResult, EstimatorReport, ReportMetadata
from aggcorrect.global_common import constants as global_constants
from aggcorrect.global_common import EstimationException
from aggcorrect.inference.models import PosteriorSpec, DirichletProduct
from aggcorrect.logger import logger, performance
from aggcorrect.model_core.exceptions import DimensionMismatchException
from aggcorrect.model_core.helper import CorrectionHelper
from aggcorrect.model_core.models import AggregateVector, TargetRecord, ContingencyMatrix, ConfusionCounts, CountsVector
from aggcorrect.sampling.models import SamplerConfig, PosteriorDraws


def naive_estimate(records: Sequence[TargetRecord], k: int) -> AggregateVector:
    return model_core.aggregate_by_predicted(records, k)[0]


def plug_in_contingency(counts: ConfusionCounts) -> ContingencyMatrix:
    empty_rows: np.ndarray = np.flatnonzero(counts.row_totals == 0)
    if len(empty_rows) > 0:
        raise EmptyRowException(f"No test observations with true class {int(empty_rows[0])}; the plug-in error rates are undefined")
    return ContingencyMatrix(counts.cells / counts.row_totals[:, None])


def baseline_estimate(contingency_estimate: ContingencyMatrix, u_hat: AggregateVector) -> AggregateVector:
    #   negative components are returned as they are
    if contingency_estimate.k != u_hat.k:
        raise DimensionMismatchException(f"{contingency_estimate.k}-class contingency matrix with {u_hat.k}-class aggregates")
    return AggregateVector(model_core.apply_correction(model_core.invert_transpose(contingency_estimate), u_hat.sums))


def get_baseline_result(counts: ConfusionCounts, u_hat: AggregateVector, contingency_estimate: Optional[ContingencyMatrix] = None) -> BaselineResult:
    try:
        contingency_estimate = plug_in_contingency(counts) if contingency_estimate is None else contingency_estimate
        estimate: AggregateVector = baseline_estimate(contingency_estimate, u_hat)
    except (EmptyRowException, EstimationException) as e:
        logger.warning(f"Baseline estimate unavailable: {e}")
        return BaselineResult(None, False, str(e))

    has_negative_component: bool = bool(np.any(estimate.sums < 0))
    if has_negative_component:
        logger.warning(f"Baseline estimate has negative components: {estimate.to_list()}")
    return BaselineResult(estimate.to_list(), has_negative_component)


def correct_draws(draws: PosteriorDraws, u_hat: AggregateVector) -> np.ndarray:
    inverses: np.ndarray = CorrectionHelper.invert_transposes(draws.rows)[0]
    return CorrectionHelper.correct(inverses, u_hat.sums)


def bayes_estimate(spec: PosteriorSpec, u_hat: AggregateVector, region: Optional[ConstraintRegion], cfg: SamplerConfig) -> CorrectedAggregateDistribution:
    if spec.k != u_hat.k:
        raise DimensionMismatchException(f"{spec.k}-class posterior with {u_hat.k}-class aggregates")
    start_time: float = time.time()
    draws: PosteriorDraws = sampling.rejection_sample(spec, region, cfg)
    distribution: CorrectedAggregateDistribution = CorrectedAggregateDistribution(correct_draws(draws, u_hat), draws.is_constrained, draws.accepted, draws.attempted)
    performance(global_constants.EXECUTION_TYPE_ESTIMATION, "Bayes Estimate", start_time, f"R={cfg.resolution} constrained={region is not None}")
    return distribution


def summarize(distribution: CorrectedAggregateDistribution, class_labels: Optional[List[str]] = None) -> List[ClassSummary]:
    return ClassSummary.get_all(distribution.samples, class_labels)


def get_report(prior: DirichletProduct, counts: ConfusionCounts, u_hat: AggregateVector, v_hat: CountsVector, cfg: SamplerConfig, is_constrained: bool = True,
               class_labels: Optional[List[str]] = None, contingency_estimate: Optional[ContingencyMatrix] = None) -> EstimatorReport:
    class_labels = [str(index) for index in range(u_hat.k)] if class_labels is None else class_labels
    spec: PosteriorSpec = inference.posterior_update(prior, counts)
    region: Optional[ConstraintRegion] = ConstraintRegion(v_hat) if is_constrained else None

    distribution: CorrectedAggregateDistribution = bayes_estimate(spec, u_hat, region, cfg)
    metadata: ReportMetadata = ReportMetadata(global_constants.VERSION, prior.name, cfg.resolution, cfg.seed, cfg.workers, is_constrained, distribution.acceptance_rate,
                                              distribution.accepted, distribution.attempted, class_labels, counts.total, float(v_hat.n_total),
                                              datetime.datetime.now(datetime.timezone.utc).isoformat())
    return EstimatorReport(u_hat.to_list(), get_baseline_result(counts, u_hat, contingency_estimate), distribution.mean.to_list(), distribution.median.to_list(),
                           summarize(distribution, class_labels), metadata, distribution)
