import numpy as np
import pytest

from aggcorrect import constraints
from aggcorrect.constraints.exceptions import InvalidRegionException
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.model_core.exceptions import DimensionMismatchException, NotBinaryException
from aggcorrect.model_core.helper import CorrectionHelper
from aggcorrect.model_core.models import ContingencyMatrix, CountsVector


class TestContains:
    def test_webshop_rates_are_outside(self, webshop_region: ConstraintRegion) -> None:
        assert not constraints.contains(webshop_region, ContingencyMatrix.binary(0.2, 0.4))
        assert not constraints.contains_binary_closed_form(webshop_region, 0.2, 0.4)

    def test_identity_is_inside(self, webshop_region: ConstraintRegion) -> None:
        assert constraints.contains(webshop_region, ContingencyMatrix.identity(2))
        assert constraints.contains_binary_closed_form(webshop_region, 0.0, 0.0)

    def test_singular_is_outside(self, webshop_region: ConstraintRegion) -> None:
        assert not constraints.contains(webshop_region, ContingencyMatrix.binary(0.5, 0.5))

    def test_swapped_labels_are_inside(self, webshop_region: ConstraintRegion) -> None:
        """p >= 0.9 and q >= 0.1: both rates large enough."""
        assert constraints.contains(webshop_region, ContingencyMatrix.binary(0.95, 0.5))
        assert constraints.contains_binary_closed_form(webshop_region, 0.95, 0.5)

    def test_dimension_mismatch(self, webshop_region: ConstraintRegion) -> None:
        with pytest.raises(DimensionMismatchException):
            constraints.contains(webshop_region, ContingencyMatrix.identity(3))

    def test_closed_form_needs_two_classes(self) -> None:
        with pytest.raises(NotBinaryException):
            constraints.contains_binary_closed_form(ConstraintRegion(CountsVector(np.array([1.0, 2.0, 3.0]))), 0.1, 0.1)

    def test_empty_region(self) -> None:
        with pytest.raises(InvalidRegionException):
            ConstraintRegion(CountsVector(np.zeros(2)))


class TestEquivalences:
    def test_binary_closed_form(self) -> None:
        rng: np.random.Generator = np.random.default_rng(7)
        disagreements: int = 0
        instances: int = 0
        for positives in rng.integers(1, 100, size=10):
            region: ConstraintRegion = ConstraintRegion(CountsVector(np.array([float(positives), 100.0 - positives])))
            p: np.ndarray = rng.uniform(0.0, 1.0, size=2000)
            q: np.ndarray = rng.uniform(0.0, 1.0, size=2000)
            keep: np.ndarray = np.abs(p + q - 1.0) >= 1e-6
            p, q = p[keep][:1000], q[keep][:1000]
            rows: np.ndarray = np.stack([np.stack([1.0 - p, p], axis=-1), np.stack([q, 1.0 - q], axis=-1)], axis=1)

            by_inversion: np.ndarray = constraints.contains_batch(region, rows)
            disagreements = disagreements + int(np.sum(by_inversion != constraints.contains_binary_closed_form_batch(region, p, q)))
            instances = instances + len(p)
        assert instances == 10_000
        assert disagreements == 0

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_convex_hull(self, k: int) -> None:
        rng: np.random.Generator = np.random.default_rng(8 + k)
        checked: int = 0
        inside: int = 0
        while checked < 1000:
            contingency: ContingencyMatrix = ContingencyMatrix(np.array([rng.dirichlet(np.ones(k) + 3.0 * np.eye(k)[row]) for row in range(k)]))
            if CorrectionHelper.invert_transposes(contingency.rows[None, :, :])[2][0] >= 1e8:
                continue
            region: ConstraintRegion = ConstraintRegion(CountsVector(rng.multinomial(1000, rng.dirichlet(np.ones(k))).astype(float)))
            is_inside: bool = constraints.contains(region, contingency)
            assert is_inside == constraints.convex_hull_membership(region, contingency)
            inside = inside + int(is_inside)
            checked = checked + 1
        assert 0 < inside < checked


class TestConvexHullMembership:
    def test_vertex_is_inside(self) -> None:
        region: ConstraintRegion = ConstraintRegion(CountsVector(np.array([90.0, 10.0])))
        contingency: ContingencyMatrix = ContingencyMatrix(np.array([[0.9, 0.1], [0.2, 0.8]]))
        assert constraints.convex_hull_membership(region, contingency)
        assert constraints.contains(region, contingency)

    def test_point_beyond_both_rows_is_outside(self) -> None:
        region: ConstraintRegion = ConstraintRegion(CountsVector(np.array([50.0, 50.0])))
        contingency: ContingencyMatrix = ContingencyMatrix(np.array([[0.9, 0.1], [0.8, 0.2]]))
        assert not constraints.convex_hull_membership(region, contingency)
        assert not constraints.contains(region, contingency)
