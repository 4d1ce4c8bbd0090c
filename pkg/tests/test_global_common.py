from pathlib import Path
from typing import List

import pandas
import pytest

from aggcorrect.global_common import EnumNotFoundException, InputException, create_csv, get_enum_from_value, run_in_parallel, timed
from aggcorrect.inference.constants import PriorName
from aggcorrect.simulation.models import ConvergencePoint, MethodScore


class TestGlobalCommon:
    def test_enum_from_value(self) -> None:
        assert get_enum_from_value("jeffreys", PriorName) == PriorName.JEFFREYS
        with pytest.raises(EnumNotFoundException):
            get_enum_from_value("haldane", PriorName)

    def test_run_in_parallel_keeps_argument_order(self) -> None:
        arguments: List[int] = list(range(50))
        assert run_in_parallel(lambda value: value * value, arguments, 4) == [value * value for value in arguments]
        assert run_in_parallel(lambda value: value + 1, arguments, 1) == [value + 1 for value in arguments]

    def test_create_csv(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "points.csv"
        create_csv([ConvergencePoint(50, 0.2), ConvergencePoint(500, 0.05)], str(path))
        assert list(pandas.read_csv(path)["test_size"]) == [50, 500]

    def test_create_csv_rejects_mixed_or_empty_lists(self, tmp_path: Path) -> None:
        with pytest.raises(InputException):
            create_csv([], str(tmp_path / "empty.csv"))
        with pytest.raises(InputException):
            create_csv([ConvergencePoint(50, 0.2), MethodScore("none", 50, 0.0, 0.0, 0.0, 1.0, 1, 0)], str(tmp_path / "mixed.csv"))

    def test_timed_keeps_name_and_result(self) -> None:
        @timed
        def add(first: int, second: int) -> int:
            return first + second

        assert add.__name__ == "add"
        assert add(2, 3) == 5
