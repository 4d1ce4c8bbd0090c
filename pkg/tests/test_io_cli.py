import json
from pathlib import Path
from typing import Callable, List, Sequence, Tuple

import numpy as np
import pandas
import pytest

from aggcorrect import constraints, io_cli, model_core
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.global_common import EnumNotFoundException
from aggcorrect.inference.models import DirichletProduct
from aggcorrect.io_cli import constants
from aggcorrect.io_cli.cli import main
from aggcorrect.io_cli.exceptions import UnknownLabelException, MalformedRowException, NonNumericYException, InvalidManifestException, \
    MissingInputFileException, InvalidConfigurationException
from aggcorrect.io_cli.models import ClassManifest, ExperimentConfig, RunConfig
from aggcorrect.model_core.models import CountsVector
from aggcorrect.sampling.models import PosteriorDraws

WriteCsv = Callable[[str, Sequence[str], Sequence[Sequence[object]]], str]
MANIFEST: ClassManifest = ClassManifest(["webshop", "other"])


def _get_error(capsys: pytest.CaptureFixture) -> dict:
    lines: List[str] = capsys.readouterr().err.strip().splitlines()
    return json.loads(lines[-1])


class TestManifest:
    def test_index_of(self) -> None:
        assert MANIFEST.k == 2
        assert MANIFEST.index_of("other") == 1

    def test_duplicates(self) -> None:
        with pytest.raises(InvalidManifestException):
            ClassManifest(["a", "b", "a"])

    def test_empty(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "classes.txt"
        path.write_text("\n\n", encoding="utf-8")
        with pytest.raises(InvalidManifestException):
            io_cli.load_class_manifest(str(path))

    def test_invalid_utf8(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "classes.txt"
        path.write_bytes(b"web\xff\xfeshop\nother\n")
        with pytest.raises(MalformedRowException):
            io_cli.load_class_manifest(str(path))


class TestLoadLabeledPairs:
    def test_printed_webshop_table(self, write_csv: WriteCsv) -> None:
        rows: List[Tuple[str, str]] = [("webshop", "webshop")] * 4 + [("webshop", "other")] * 2 + [("other", "webshop")] + [("other", "other")] * 2
        pairs = io_cli.load_labeled_pairs(write_csv("pairs.csv", ["true", "predicted"], rows), MANIFEST)
        assert len(pairs) == 9
        np.testing.assert_array_equal(model_core.confusion_from_pairs(pairs, 2).cells, [[4, 2], [1, 2]])

    def test_header_only(self, write_csv: WriteCsv) -> None:
        assert io_cli.load_labeled_pairs(write_csv("pairs.csv", ["true", "predicted"], []), MANIFEST) == []

    def test_unknown_label(self, write_csv: WriteCsv) -> None:
        path: str = write_csv("pairs.csv", ["true", "predicted"], [("webshop", "other"), ("shop", "other")])
        with pytest.raises(UnknownLabelException) as error:
            io_cli.load_labeled_pairs(path, MANIFEST)
        assert error.value.row_number == 3

    def test_wrong_header(self, write_csv: WriteCsv) -> None:
        with pytest.raises(MalformedRowException):
            io_cli.load_labeled_pairs(write_csv("pairs.csv", ["predicted", "true"], [("webshop", "other")]), MANIFEST)

    def test_missing_field(self, write_csv: WriteCsv) -> None:
        with pytest.raises(MalformedRowException):
            io_cli.load_labeled_pairs(write_csv("pairs.csv", ["true", "predicted"], [("webshop", "")]), MANIFEST)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(MissingInputFileException):
            io_cli.load_labeled_pairs(str(tmp_path / "absent.csv"), MANIFEST)

    def test_surplus_field(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "pairs.csv"
        path.write_text("true,predicted\nwebshop,other,webshop\nother,webshop,other\n", encoding="utf-8")
        with pytest.raises(MalformedRowException):
            io_cli.load_labeled_pairs(str(path), MANIFEST)

    def test_invalid_utf8(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "pairs.csv"
        path.write_bytes(b"true,predicted\nweb\xff\xfeshop,other\n")
        with pytest.raises(MalformedRowException):
            io_cli.load_labeled_pairs(str(path), MANIFEST)


class TestLoadTargetRecords:
    def test_webshop_records(self, webshop_files: Tuple[str, str, str]) -> None:
        records = io_cli.load_target_records(webshop_files[2], MANIFEST)
        aggregates, counts = model_core.aggregate_by_predicted(records, 2)
        np.testing.assert_array_equal(counts.counts, [10.0, 90.0])
        np.testing.assert_array_equal(aggregates.sums, [10.0, 90.0])

    def test_negative_y(self, write_csv: WriteCsv) -> None:
        records = io_cli.load_target_records(write_csv("records.csv", ["predicted", "y"], [("webshop", -12.5), ("other", 3)]), MANIFEST)
        assert [record.y for record in records] == [-12.5, 3.0]

    def test_non_numeric_y(self, write_csv: WriteCsv) -> None:
        with pytest.raises(NonNumericYException):
            io_cli.load_target_records(write_csv("records.csv", ["predicted", "y"], [("webshop", "twelve")]), MANIFEST)


class TestLoadPrior:
    def test_named(self) -> None:
        np.testing.assert_array_equal(io_cli.load_prior("jeffreys", 2).gamma, [1.0, 1.0])
        np.testing.assert_array_equal(io_cli.load_prior("uniform", 3).alpha, np.ones((3, 3)))

    def test_custom(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "prior.toml"
        path.write_text("alpha = [[9.0, 1.0], [1, 9]]\ngamma = [2.0, 3.0]\n", encoding="utf-8")
        prior: DirichletProduct = io_cli.load_prior(f"custom:{path}", 2)
        np.testing.assert_array_equal(prior.alpha, [[9.0, 1.0], [1.0, 9.0]])

    def test_unknown(self) -> None:
        with pytest.raises(EnumNotFoundException):
            io_cli.load_prior("flat", 2)


class TestConfigs:
    @pytest.mark.parametrize("name", ["peculiar", "table1_surrogate", "smoke.toml"])
    def test_bundled_configs_load(self, name: str) -> None:
        assert isinstance(io_cli.load_experiment_config(name), ExperimentConfig)

    def test_surrogate_values(self) -> None:
        config: ExperimentConfig = io_cli.load_experiment_config("table1_surrogate")
        assert config.experiment is not None
        assert config.experiment.population.population_size == 18939
        assert config.experiment.population.base_rates == [0.075, 0.925]
        assert config.experiment.replications == 1000
        assert config.experiment.sampler.resolution == 10000
        assert len(config.experiment.method_list) == 6

    def test_unknown_key(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "experiment.toml"
        path.write_text('scenario = "peculiar"\nreplicates = 5\n', encoding="utf-8")
        with pytest.raises(InvalidConfigurationException):
            io_cli.load_experiment_config(str(path))

    def test_flags_override_file(self, tmp_path: Path) -> None:
        path: Path = tmp_path / "run.toml"
        path.write_text('classes = "classes.txt"\nseed = 1\nresolution = 50\n', encoding="utf-8")
        config: RunConfig = io_cli.get_run_config(str(path), {"seed": 9, "resolution": None})
        assert (config.seed, config.resolution, config.classes) == (9, 50, "classes.txt")


class TestCommands:
    def test_correct(self, webshop_files: Tuple[str, str, str], tmp_path: Path) -> None:
        classes, pairs, records = webshop_files
        report_path: Path = tmp_path / "report.json"
        samples_path: Path = tmp_path / "samples.csv"
        summary_path: Path = tmp_path / "summary.csv"
        exit_code: int = main(["correct", "--pairs", pairs, "--records", records, "--classes", classes, "--prior", "jeffreys", "--resolution", "2000",
                               "--seed", "42", "--out", str(report_path), "--samples", str(samples_path), "--summary", str(summary_path)])
        assert exit_code == 0

        report: dict = json.loads(report_path.read_text(encoding="utf-8"))
        np.testing.assert_allclose(report["baseline"]["estimate"], [-75.0, 175.0], atol=1e-9)
        assert report["metadata"]["seed"] == 42
        assert report["metadata"]["is_constrained"] is True
        samples: pandas.DataFrame = pandas.read_csv(samples_path)
        assert list(samples.columns) == ["webshop", "other"]
        assert len(samples) == 2000
        assert (samples["webshop"] >= -1e-9).all()
        assert len(pandas.read_csv(summary_path)) == 2

    def test_correct_is_reproducible(self, webshop_files: Tuple[str, str, str], tmp_path: Path) -> None:
        classes, pairs, records = webshop_files
        outputs: List[List[str]] = []
        for run in range(2):
            path: Path = tmp_path / f"report_{run}.json"
            assert main(["correct", "--pairs", pairs, "--records", records, "--classes", classes, "--resolution", "1000", "--seed", "7", "--workers", "2",
                         "--out", str(path)]) == 0
            outputs.append([line for line in path.read_text(encoding="utf-8").splitlines() if '"timestamp"' not in line])
        assert outputs[0] == outputs[1]

    def test_correct_unconstrained_uniform(self, webshop_files: Tuple[str, str, str]) -> None:
        classes, pairs, records = webshop_files
        report = io_cli.cmd_correct(RunConfig(classes, pairs, records, prior="uniform", resolution=500, is_constrained=False, out=None,
                                              output_format="text"))
        assert not report.metadata.is_constrained
        assert report.metadata.prior == "uniform"

    def test_missing_input(self, webshop_files: Tuple[str, str, str], tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
        classes, pairs, _ = webshop_files
        missing: str = str(tmp_path / "missing.csv")
        assert main(["correct", "--pairs", pairs, "--records", missing, "--classes", classes]) == constants.EXIT_CODE_INPUT
        error: dict = _get_error(capsys)
        assert error["error"] == "MissingInputFileException"
        assert missing in error["message"]

    def test_unwritable_output(self, webshop_files: Tuple[str, str, str], tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
        classes, pairs, records = webshop_files
        out: str = str(tmp_path / "no_such_directory" / "report.json")
        assert main(["correct", "--pairs", pairs, "--records", records, "--classes", classes, "--resolution", "200", "--out", out]) \
            == constants.EXIT_CODE_INPUT
        error: dict = _get_error(capsys)
        assert error["error"] == "OutputWriteException"
        assert out in error["message"]

    def test_undecodable_pairs(self, webshop_files: Tuple[str, str, str], tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
        classes, _, records = webshop_files
        pairs: Path = tmp_path / "latin1.csv"
        pairs.write_bytes(b"true,predicted\nweb\xff\xfeshop,other\n")
        assert main(["correct", "--pairs", str(pairs), "--records", records, "--classes", classes]) == constants.EXIT_CODE_INPUT
        assert _get_error(capsys)["error"] == "MalformedRowException"

    def test_starvation_exit_code(self, webshop_files: Tuple[str, str, str], capsys: pytest.CaptureFixture) -> None:
        classes, pairs, records = webshop_files
        assert main(["correct", "--pairs", pairs, "--records", records, "--classes", classes, "--resolution", "100", "--max-attempts-factor", "1"]) \
            == constants.EXIT_CODE_ESTIMATION
        assert _get_error(capsys)["error"] == "ConstraintStarvationException"

    def test_bad_flags_exit_code(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["correct", "--resolution", "many"]) == constants.EXIT_CODE_CONFIGURATION
        assert _get_error(capsys)["exit_code"] == constants.EXIT_CODE_CONFIGURATION

    def test_posterior_without_data_is_the_prior(self, tmp_path: Path, write_csv: WriteCsv) -> None:
        classes: Path = tmp_path / "classes.txt"
        classes.write_text("positive\nnegative\n", encoding="utf-8")
        out: Path = tmp_path / "draws.csv"
        pairs: str = write_csv("pairs.csv", ["true", "predicted"], [])
        assert main(["posterior", "--pairs", pairs, "--classes", str(classes), "--prior", "jeffreys", "--resolution", "20000", "--out", str(out)]) == 0

        draws: pandas.DataFrame = pandas.read_csv(out)
        assert len(draws) == 20000
        p: np.ndarray = draws["p_positive_negative"].to_numpy()
        assert p.mean() == pytest.approx(0.5, abs=0.01)
        assert p.var() == pytest.approx(0.125, abs=0.005)

    def test_posterior_converges_with_large_test_set(self, tmp_path: Path, write_csv: WriteCsv) -> None:
        classes: Path = tmp_path / "classes.txt"
        classes.write_text("positive\nnegative\n", encoding="utf-8")
        rows: List[Tuple[str, str]] = [("positive", "positive")] * 140 + [("positive", "negative")] * 60 + [("negative", "positive")] * 180 \
            + [("negative", "negative")] * 1620
        config: RunConfig = RunConfig(str(classes), write_csv("pairs.csv", ["true", "predicted"], rows), resolution=5000, out=str(tmp_path / "draws.csv"))
        draws: PosteriorDraws = io_cli.cmd_posterior(config)
        assert draws.rows[:, 0, 1].mean() == pytest.approx(0.3, abs=0.02)

    def test_constrained_posterior_draws_are_admissible(self, webshop_files: Tuple[str, str, str], tmp_path: Path) -> None:
        classes, pairs, records = webshop_files
        draws: PosteriorDraws = io_cli.cmd_posterior(RunConfig(classes, pairs, records, resolution=1000, out=str(tmp_path / "draws.csv")))
        region: ConstraintRegion = ConstraintRegion(CountsVector(np.array([10.0, 90.0])))
        assert draws.is_constrained
        assert np.all(constraints.contains_binary_closed_form_batch(region, draws.rows[:, 0, 1], draws.rows[:, 1, 0]))

    def test_simulate_smoke(self, tmp_path: Path) -> None:
        out: Path = tmp_path / "scores.csv"
        json_out: Path = tmp_path / "scores.json"
        assert main(["simulate", "--config", "smoke", "--out", str(out), "--json", str(json_out)]) == 0
        scores: pandas.DataFrame = pandas.read_csv(out)
        assert list(scores["method"]) == ["none", "baseline", "bayes-jeffreys-constrained"]
        assert (scores.loc[scores["replications_used"] == 1, "variance"] == 0.0).all()
        assert json.loads(json_out.read_text(encoding="utf-8"))["replications"] == 1

    def test_simulate_schema_violation(self, tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
        path: Path = tmp_path / "experiment.toml"
        path.write_text('scenario = "experiment"\n', encoding="utf-8")
        assert main(["simulate", "--config", str(path)]) == constants.EXIT_CODE_CONFIGURATION
        assert _get_error(capsys)["exit_code"] == constants.EXIT_CODE_CONFIGURATION
