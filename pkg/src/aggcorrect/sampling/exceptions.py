from aggcorrect.global_common import InputException, EstimationException, ConfigurationException


class NonPositiveConcentrationException(InputException):
    pass


class InvalidSamplerConfigException(ConfigurationException):
    pass


class ConstraintStarvationException(EstimationException):
    acceptance_rate: float
    accepted: int
    attempted: int

    def __init__(self, accepted: int, attempted: int, resolution: int):
        self.accepted = accepted
        self.attempted = attempted
        self.acceptance_rate = accepted / attempted if attempted > 0 else 0.0
        super().__init__(f"Only {accepted} of {resolution} draws accepted after {attempted} attempts (acceptance rate {self.acceptance_rate:.3g}); "
                         f"the posterior puts almost no mass on the admissible region")
