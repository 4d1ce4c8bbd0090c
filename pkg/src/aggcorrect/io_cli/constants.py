import enum
from pathlib import Path
from typing import List


class OutputFormat(enum.Enum):
    JSON: str = "json"
    TEXT: str = "text"


class Scenario(enum.Enum):
    EXPERIMENT: str = "experiment"
    PECULIAR: str = "peculiar"


EXIT_CODE_SUCCESS: int = 0
EXIT_CODE_INPUT: int = 2
EXIT_CODE_ESTIMATION: int = 3
EXIT_CODE_CONFIGURATION: int = 4

PAIRS_HEADER: List[str] = ["true", "predicted"]
RECORDS_HEADER: List[str] = ["predicted", "y"]

CUSTOM_PRIOR_PREFIX: str = "custom:"
DEFAULT_PRIOR: str = "jeffreys"
BUNDLED_CONFIG_DIRECTORY: Path = Path(__file__).parent / "configs"
CONFIG_FILE_SUFFIX: str = ".toml"
