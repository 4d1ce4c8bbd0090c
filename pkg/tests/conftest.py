from pathlib import Path
from typing import Callable, List, Sequence, Tuple

import numpy as np
import pytest

from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.inference import prior_jeffreys, posterior_update
from aggcorrect.inference.models import PosteriorSpec
from aggcorrect.model_core.models import ConfusionCounts, CountsVector, AggregateVector

#   TP=4, FN=1 / FP=2, TN=3: n = 10 pairs reproducing p = 0.2 and q = 0.4
WEBSHOP_PAIRS: List[Tuple[str, str]] = [("webshop", "webshop")] * 4 + [("webshop", "other")] + [("other", "webshop")] * 2 + [("other", "other")] * 3


@pytest.fixture
def webshop_counts() -> ConfusionCounts:
    return ConfusionCounts(np.array([[4, 1], [2, 3]]))


@pytest.fixture
def webshop_v_hat() -> CountsVector:
    return CountsVector(np.array([10.0, 90.0]))


@pytest.fixture
def webshop_u_hat() -> AggregateVector:
    return AggregateVector(np.array([10.0, 90.0]))


@pytest.fixture
def webshop_region(webshop_v_hat: CountsVector) -> ConstraintRegion:
    return ConstraintRegion(webshop_v_hat)


@pytest.fixture
def webshop_posterior(webshop_counts: ConfusionCounts) -> PosteriorSpec:
    return posterior_update(prior_jeffreys(2), webshop_counts)


@pytest.fixture
def write_csv(tmp_path: Path) -> Callable[[str, Sequence[str], Sequence[Sequence[object]]], str]:
    def write(name: str, header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
        path: Path = tmp_path / name
        lines: List[str] = [",".join(header)] + [",".join(str(value) for value in row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def webshop_files(tmp_path: Path, write_csv: Callable[[str, Sequence[str], Sequence[Sequence[object]]], str]) -> Tuple[str, str, str]:
    """(classes, pairs, records) for ten of a hundred objects predicted webshop."""
    classes: Path = tmp_path / "classes.txt"
    classes.write_text("webshop\nother\n", encoding="utf-8")
    pairs: str = write_csv("pairs.csv", ["true", "predicted"], WEBSHOP_PAIRS)
    records: str = write_csv("records.csv", ["predicted", "y"], [("webshop", 1)] * 10 + [("other", 1)] * 90)
    return str(classes), pairs, records
