import time
import tomllib
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import dacite
import numpy as np
import pandas

from aggcorrect import estimators, inference, model_core, sampling, simulation
from aggcorrect.constraints.models import ConstraintRegion
from aggcorrect.estimators.models import EstimatorReport
from aggcorrect.global_common import ConfigurationException, InputException, constants as global_constants, create_csv, get_enum_from_value, timed
from aggcorrect.inference.constants import PriorName
from aggcorrect.inference.models import DirichletProduct, PosteriorSpec
from aggcorrect.io_cli import constants
from aggcorrect.io_cli.constants import OutputFormat, Scenario
from aggcorrect.io_cli.exceptions import MalformedRowException, MissingInputFileException, NonNumericYException, InvalidConfigurationException, \
    OutputWriteException
from aggcorrect.io_cli.models import ClassManifest, RunConfig, ExperimentConfig
from aggcorrect.logger import logger, performance
from aggcorrect.model_core.exceptions import NonFiniteYException, DimensionMismatchException
from aggcorrect.model_core.models import ClassIndex, LabeledPair, TargetRecord, ConfusionCounts, CountsVector
from aggcorrect.sampling.models import SamplerConfig, PosteriorDraws
from aggcorrect.simulation.models import ExperimentResult

_DACITE_CONFIG: dacite.Config = dacite.Config(strict=True, cast=[float])


def _assert_file_exists(path: str, description: str) -> Path:
    file_path: Path = Path(path)
    if not file_path.is_file():
        raise MissingInputFileException(f"{description} not found: {path}")
    return file_path


def _read_csv(path: str, header: List[str], description: str) -> pandas.DataFrame:
    _assert_file_exists(path, description)
    try:
        #   with header=None a row wider than the header is a parser error, never an implicit index
        table: pandas.DataFrame = pandas.read_csv(path, header=None, index_col=False, dtype=str, keep_default_na=False, skipinitialspace=True,
                                                  encoding="utf-8")
    except pandas.errors.EmptyDataError as e:
        raise MalformedRowException(f"{description} {path} is empty; a header row {','.join(header)} is required") from e
    except pandas.errors.ParserError as e:
        raise MalformedRowException(f"{description} {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise MalformedRowException(f"{description} {path} is not valid UTF-8: {e}") from e

    found_header: List[str] = [str(value).strip() for value in table.iloc[0]]
    if table.shape[1] != len(header) or found_header != header:
        raise MalformedRowException(f"{description} {path} row 1: expected header {','.join(header)}, got {','.join(found_header)}")
    return table.iloc[1:].reset_index(drop=True)


def _get_cell(value: Any, path: str, row_number: int) -> str:
    if not isinstance(value, str) or value.strip() == "":
        raise MalformedRowException(f"{path} row {row_number}: missing field")
    return value.strip()


def load_class_manifest(path: str) -> ClassManifest:
    file_path: Path = _assert_file_exists(path, "Class manifest")
    try:
        text: str = file_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MalformedRowException(f"Class manifest {path} is not valid UTF-8: {e}") from e
    labels: List[str] = [line.strip() for line in text.splitlines() if line.strip() != ""]
    return ClassManifest(labels)


def load_labeled_pairs(path: str, manifest: ClassManifest) -> List[LabeledPair]:
    data: pandas.DataFrame = _read_csv(path, constants.PAIRS_HEADER, "Labeled pairs file")
    pairs: List[LabeledPair] = []
    for row_index, (true_label, predicted_label) in enumerate(data.itertuples(index=False, name=None)):
        #   the header is row 1
        row_number: int = row_index + 2
        pairs.append(LabeledPair(manifest.index_of(_get_cell(true_label, path, row_number), row_number),
                                 manifest.index_of(_get_cell(predicted_label, path, row_number), row_number)))
    return pairs


def load_target_records(path: str, manifest: ClassManifest) -> List[TargetRecord]:
    data: pandas.DataFrame = _read_csv(path, constants.RECORDS_HEADER, "Target records file")
    records: List[TargetRecord] = []
    for row_index, (predicted_label, raw_y) in enumerate(data.itertuples(index=False, name=None)):
        row_number: int = row_index + 2
        predicted_class: ClassIndex = manifest.index_of(_get_cell(predicted_label, path, row_number), row_number)
        try:
            y: float = float(_get_cell(raw_y, path, row_number))
        except ValueError as e:
            raise NonNumericYException(f"{path} row {row_number}: y value {raw_y!r} is not a number") from e
        if not np.isfinite(y):
            raise NonFiniteYException(f"{path} row {row_number}: y value {raw_y!r} is not finite")
        records.append(TargetRecord(predicted_class, y))
    return records


def load_prior(prior: str, k: int) -> DirichletProduct:
    if prior.startswith(constants.CUSTOM_PRIOR_PREFIX):
        path: str = prior[len(constants.CUSTOM_PRIOR_PREFIX):]
        data: Dict[str, Any] = _load_toml(path, "Custom prior file")
        if set(data.keys()) != {"alpha", "gamma"}:
            raise InvalidConfigurationException(f"A custom prior file needs exactly the keys alpha and gamma, got {sorted(data.keys())}")
        custom_prior: DirichletProduct = inference.prior_custom(np.asarray(data["alpha"], dtype=float), np.asarray(data["gamma"], dtype=float))
        if custom_prior.k != k:
            raise DimensionMismatchException(f"The custom prior has {custom_prior.k} classes, the manifest has {k}")
        return custom_prior

    prior_name: PriorName = get_enum_from_value(prior, PriorName)
    if prior_name == PriorName.CUSTOM:
        raise InvalidConfigurationException(f"Use {constants.CUSTOM_PRIOR_PREFIX}<file> for a custom prior")
    return inference.get_prior(prior_name, k)


def _load_toml(path: str, description: str) -> Dict[str, Any]:
    file_path: Path = _assert_file_exists(path, description)
    try:
        with file_path.open("rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise InvalidConfigurationException(f"{description} {path} is not valid TOML: {e}") from e


def resolve_config_path(name: str) -> str:
    if Path(name).is_file():
        return name
    for candidate in (constants.BUNDLED_CONFIG_DIRECTORY / name, constants.BUNDLED_CONFIG_DIRECTORY / (name + constants.CONFIG_FILE_SUFFIX)):
        if candidate.is_file():
            return str(candidate)
    raise MissingInputFileException(f"Config file not found: {name}")


def load_experiment_config(path: str) -> ExperimentConfig:
    data: Dict[str, Any] = _load_toml(resolve_config_path(path), "Experiment config")
    try:
        return dacite.from_dict(data_class=ExperimentConfig, data=data, config=_DACITE_CONFIG)
    except (dacite.DaciteError, TypeError, ValueError, InputException) as e:
        raise InvalidConfigurationException(f"Invalid experiment config {path}: {e}") from e


def get_run_config(config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    data: Dict[str, Any] = {} if config_path is None else _load_toml(config_path, "Run config")
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return dacite.from_dict(data_class=RunConfig, data=data, config=_DACITE_CONFIG)
    except (dacite.DaciteError, TypeError, ValueError) as e:
        raise InvalidConfigurationException(f"Invalid run config: {e}") from e


def _get_sampler_config(config: RunConfig) -> SamplerConfig:
    return SamplerConfig(config.resolution, config.max_attempts_factor, config.seed, config.workers)


def _write_file(path: str, write: Callable[[str], Any]) -> None:
    try:
        write(path)
    except OSError as e:
        raise OutputWriteException(f"Cannot write {path}: {e}") from e


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        print(text)
    else:
        _write_file(path, lambda file_path: Path(file_path).write_text(text + "\n", encoding="utf-8"))


def write_report(report: EstimatorReport, path: Optional[str], output_format: OutputFormat) -> None:
    _write_text(path, report.to_json() if output_format == OutputFormat.JSON else report.to_text())


@timed
def cmd_correct(config: RunConfig) -> EstimatorReport:
    start_time: float = time.time()
    if config.pairs is None or config.records is None:
        raise InvalidConfigurationException("correct needs both a labeled pairs file and a target records file")

    manifest: ClassManifest = load_class_manifest(config.classes)
    counts: ConfusionCounts = model_core.confusion_from_pairs(load_labeled_pairs(config.pairs, manifest), manifest.k)
    u_hat, v_hat = model_core.aggregate_by_predicted(load_target_records(config.records, manifest), manifest.k)
    prior: DirichletProduct = load_prior(config.prior, manifest.k)

    report: EstimatorReport = estimators.get_report(prior, counts, u_hat, v_hat, _get_sampler_config(config), config.is_constrained, manifest.labels)
    write_report(report, config.out, config.output_format_type)
    if config.samples is not None and report.distribution is not None:
        samples: pandas.DataFrame = pandas.DataFrame(report.distribution.samples, columns=manifest.labels)
        _write_file(config.samples, lambda path: samples.to_csv(path, index=False))
    if config.summary is not None:
        _write_file(config.summary, lambda path: create_csv(report.bayes_summary, path))

    performance(global_constants.EXECUTION_TYPE_CLI, "correct", start_time, f"n={counts.total} N={v_hat.n_total}")
    return report


@timed
def cmd_posterior(config: RunConfig) -> PosteriorDraws:
    start_time: float = time.time()
    if config.pairs is None:
        raise InvalidConfigurationException("posterior needs a labeled pairs file")

    manifest: ClassManifest = load_class_manifest(config.classes)
    counts: ConfusionCounts = model_core.confusion_from_pairs(load_labeled_pairs(config.pairs, manifest), manifest.k)
    spec: PosteriorSpec = inference.posterior_update(load_prior(config.prior, manifest.k), counts)

    region: Optional[ConstraintRegion] = None
    if config.is_constrained and config.records is not None:
        v_hat: CountsVector = model_core.aggregate_by_predicted(load_target_records(config.records, manifest), manifest.k)[1]
        region = ConstraintRegion(v_hat)
    elif config.is_constrained:
        logger.info("No records file given; drawing from the unconstrained posterior")

    draws: PosteriorDraws = sampling.rejection_sample(spec, region, _get_sampler_config(config))
    columns: Dict[str, np.ndarray] = {}
    for true_class, true_label in enumerate(manifest.labels):
        for predicted_class, predicted_label in enumerate(manifest.labels):
            columns[f"p_{true_label}_{predicted_label}"] = draws.rows[:, true_class, predicted_class]
    for true_class, true_label in enumerate(manifest.labels):
        columns[f"beta_{true_label}"] = draws.base_rates[:, true_class]

    table: pandas.DataFrame = pandas.DataFrame(columns)
    if config.out is None:
        print(table.to_csv(index=False), end="")
    else:
        _write_file(config.out, lambda path: table.to_csv(path, index=False))

    performance(global_constants.EXECUTION_TYPE_CLI, "posterior", start_time, f"n={counts.total} R={config.resolution}")
    return draws


@timed
def cmd_simulate(config_path: str, out: Optional[str] = None, json_out: Optional[str] = None) -> Union[ExperimentResult, EstimatorReport]:
    start_time: float = time.time()
    config: ExperimentConfig = load_experiment_config(config_path)

    result: Union[ExperimentResult, EstimatorReport]
    if config.scenario_type == Scenario.PECULIAR:
        result = simulation.peculiar_example(config.peculiar)
        write_report(result, out, OutputFormat.JSON if out is not None and out.endswith(".json") else OutputFormat.TEXT)
        if json_out is not None:
            write_report(result, json_out, OutputFormat.JSON)
    else:
        if config.experiment is None:
            raise ConfigurationException("The experiment scenario needs an [experiment] table")
        experiment_result: ExperimentResult = simulation.run_experiment(config.experiment)
        if out is None:
            print(pandas.DataFrame([asdict(score) for score in experiment_result.scores]).to_string(index=False))
        else:
            _write_file(out, lambda path: create_csv(experiment_result.scores, path))
        if json_out is not None:
            _write_text(json_out, experiment_result.to_json())
        result = experiment_result

    performance(global_constants.EXECUTION_TYPE_CLI, "simulate", start_time, config_path)
    return result
