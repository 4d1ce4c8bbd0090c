from importlib import metadata

PACKAGE_NAME: str = "aggcorrect"

try:
    VERSION: str = metadata.version(PACKAGE_NAME)
except metadata.PackageNotFoundError:
    VERSION = "unknown"

EXECUTION_TYPE_SAMPLING: str = "Sampling"
EXECUTION_TYPE_ESTIMATION: str = "Estimation"
EXECUTION_TYPE_SIMULATION: str = "Simulation"
EXECUTION_TYPE_CLI: str = "CLI"
