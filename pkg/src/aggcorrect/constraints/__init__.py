import numpy as np
from scipy.optimize import nnls

from aggcorrect.constraints import constants
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.model_core import constants as model_core_constants
from aggcorrect.model_core.exceptions import DimensionMismatchException, NotBinaryException
from aggcorrect.model_core.helper import CorrectionHelper
from aggcorrect.model_core.models import ContingencyMatrix


def _assert_same_k(region: ConstraintRegion, k: int) -> None:
    if region.k != k:
        raise DimensionMismatchException(f"{region.k}-class region tested against a {k}-class contingency matrix")


def contains_batch(region: ConstraintRegion, rows: np.ndarray) -> np.ndarray:
    _assert_same_k(region, rows.shape[-1])
    inverses, is_invertible, _ = CorrectionHelper.invert_transposes(rows)
    corrected_counts: np.ndarray = CorrectionHelper.correct(inverses, region.v_hat.counts)
    return is_invertible & np.all(corrected_counts >= -region.tolerance * region.n_total, axis=-1)


def contains(region: ConstraintRegion, contingency: ContingencyMatrix) -> bool:
    #   a singular P cannot certify membership and counts as outside
    return bool(contains_batch(region, contingency.rows[None, :, :])[0])


def contains_binary_closed_form_batch(region: ConstraintRegion, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    if region.k != 2:
        raise NotBinaryException(f"The closed form only applies to two classes, got {region.k}")
    positive_rate: float = float(region.base_rates[model_core_constants.POSITIVE_CLASS_INDEX])
    negative_rate: float = float(region.base_rates[model_core_constants.NEGATIVE_CLASS_INDEX])
    return ((p <= negative_rate) & (q <= positive_rate)) | ((p >= negative_rate) & (q >= positive_rate))


def contains_binary_closed_form(region: ConstraintRegion, p: float, q: float) -> bool:
    return bool(contains_binary_closed_form_batch(region, np.asarray(p), np.asarray(q)))


def convex_hull_membership(region: ConstraintRegion, contingency: ContingencyMatrix) -> bool:
    _assert_same_k(region, contingency.k)
    system: np.ndarray = np.vstack([contingency.rows.T, np.ones((1, contingency.k))])
    target: np.ndarray = np.concatenate([region.base_rates, [1.0]])
    _, residual = nnls(system, target)
    return bool(residual <= constants.HULL_TOLERANCE)
