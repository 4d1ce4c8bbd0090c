import argparse
import json
import sys
from typing import Any, Dict, List, NoReturn, Optional

from aggcorrect import io_cli
from aggcorrect.global_common import CustomException, InputException, EstimationException, ConfigurationException, constants as global_constants
from aggcorrect.io_cli import constants
from aggcorrect.io_cli.exceptions import InvalidConfigurationException
from aggcorrect.io_cli.models import RunConfig
from aggcorrect.logger import logger


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise InvalidConfigurationException(f"{self.prog}: {message}")


def _add_run_arguments(parser: argparse.ArgumentParser, needs_records: bool) -> None:
    parser.add_argument("--config", help="TOML file with run settings; flags override its values")
    parser.add_argument("--pairs", help="CSV with header true,predicted")
    parser.add_argument("--records", help="CSV with header predicted,y" + ("" if needs_records else " (enables the constraint)"))
    parser.add_argument("--classes", help="Class manifest, one label per line")
    parser.add_argument("--prior", help="uniform, jeffreys or custom:<file.toml>")
    parser.add_argument("--resolution", type=int, help="Number of accepted posterior draws R")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--no-constraints", dest="is_constrained", action="store_false", default=None)
    parser.add_argument("--max-attempts-factor", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out")


def get_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = _ArgumentParser(prog=global_constants.PACKAGE_NAME,
                                                      description="Bayesian correction of misclassification bias in classification-based aggregates")
    parser.add_argument("--version", action="version", version=global_constants.VERSION)
    commands = parser.add_subparsers(dest="command", required=True)

    correct: argparse.ArgumentParser = commands.add_parser("correct", help="Naive, baseline and Bayesian estimates for one dataset")
    _add_run_arguments(correct, True)
    correct.add_argument("--format", dest="output_format", choices=[output_format.value for output_format in constants.OutputFormat])
    correct.add_argument("--samples", help="CSV of the corrected aggregate samples")
    correct.add_argument("--summary", help="CSV of the per-class posterior summary")

    posterior: argparse.ArgumentParser = commands.add_parser("posterior", help="Posterior draws of the error rates and base rates")
    _add_run_arguments(posterior, False)

    simulate: argparse.ArgumentParser = commands.add_parser("simulate", help="Bootstrap comparison of correction methods")
    simulate.add_argument("--config", required=True, help="Experiment TOML file or the name of a bundled config")
    simulate.add_argument("--out", help="Scores CSV (or report file for the peculiar scenario)")
    simulate.add_argument("--json", dest="json_out", help="Also write the result as JSON")
    return parser


def _get_exit_code(exception: CustomException) -> int:
    if isinstance(exception, InputException):
        return constants.EXIT_CODE_INPUT
    elif isinstance(exception, EstimationException):
        return constants.EXIT_CODE_ESTIMATION
    elif isinstance(exception, ConfigurationException):
        return constants.EXIT_CODE_CONFIGURATION
    return constants.EXIT_CODE_INPUT


def _run(arguments: argparse.Namespace) -> None:
    if arguments.command == "simulate":
        io_cli.cmd_simulate(arguments.config, arguments.out, arguments.json_out)
        return

    overrides: Dict[str, Any] = {key: value for key, value in vars(arguments).items() if key not in ("command", "config")}
    run_config: RunConfig = io_cli.get_run_config(arguments.config, overrides)
    if arguments.command == "correct":
        io_cli.cmd_correct(run_config)
    else:
        io_cli.cmd_posterior(run_config)


def _report_error(exception: Exception, exit_code: int) -> int:
    logger.debug(f"{type(exception).__name__}: {exception}")
    print(json.dumps({"error": type(exception).__name__, "exit_code": exit_code, "message": str(exception)}), file=sys.stderr)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    try:
        _run(get_parser().parse_args(argv))
    except CustomException as e:
        return _report_error(e, _get_exit_code(e))
    except OSError as e:
        #   unreadable inputs that passed the existence checks
        return _report_error(e, constants.EXIT_CODE_INPUT)
    return constants.EXIT_CODE_SUCCESS


if __name__ == "__main__":
    sys.exit(main())
