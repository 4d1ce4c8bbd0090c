from dataclasses import dataclass, field
from typing import List, Optional, Dict

from aggcorrect.global_common import get_enum_from_value
from aggcorrect.io_cli import constants
from aggcorrect.io_cli.constants import OutputFormat, Scenario
from aggcorrect.io_cli.exceptions import InvalidManifestException, UnknownLabelException, InvalidConfigurationException
from aggcorrect.model_core.models import ClassIndex
from aggcorrect.sampling import constants as sampling_constants
from aggcorrect.simulation.models import ExperimentSpec, PeculiarSpec


@dataclass(frozen=True)
class ClassManifest:
    labels: List[str]
    index_by_label: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.labels) == 0:
            raise InvalidManifestException("The class manifest lists no labels")
        if any(label == "" for label in self.labels):
            raise InvalidManifestException("Class labels must be non-empty")
        duplicates: List[str] = sorted({label for label in self.labels if self.labels.count(label) > 1})
        if len(duplicates) > 0:
            raise InvalidManifestException(f"Duplicate class labels: {duplicates}")
        object.__setattr__(self, "index_by_label", {label: index for index, label in enumerate(self.labels)})

    @property
    def k(self) -> int:
        return len(self.labels)

    def index_of(self, label: str, row_number: Optional[int] = None) -> ClassIndex:
        if label not in self.index_by_label:
            location: str = "" if row_number is None else f" at row {row_number}"
            raise UnknownLabelException(f"Unknown class label {label!r}{location}; expected one of {self.labels}", row_number)
        return ClassIndex(self.index_by_label[label])


@dataclass(frozen=True)
class RunConfig:
    classes: str
    pairs: Optional[str] = None
    records: Optional[str] = None
    prior: str = constants.DEFAULT_PRIOR
    resolution: int = sampling_constants.DEFAULT_RESOLUTION
    seed: int = sampling_constants.DEFAULT_SEED
    is_constrained: bool = True
    max_attempts_factor: int = sampling_constants.DEFAULT_MAX_ATTEMPTS_FACTOR
    workers: int = sampling_constants.DEFAULT_WORKERS
    out: Optional[str] = None
    output_format: str = OutputFormat.JSON.value
    samples: Optional[str] = None
    summary: Optional[str] = None

    def __post_init__(self) -> None:
        get_enum_from_value(self.output_format, OutputFormat)

    @property
    def output_format_type(self) -> OutputFormat:
        return get_enum_from_value(self.output_format, OutputFormat)


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = Scenario.EXPERIMENT.value
    experiment: Optional[ExperimentSpec] = None
    peculiar: PeculiarSpec = field(default_factory=PeculiarSpec)

    def __post_init__(self) -> None:
        if self.scenario_type == Scenario.EXPERIMENT and self.experiment is None:
            raise InvalidConfigurationException("The experiment scenario needs an [experiment] table")

    @property
    def scenario_type(self) -> Scenario:
        return get_enum_from_value(self.scenario, Scenario)
