from aggcorrect.global_common import InputException, ConfigurationException


class NonPositiveHyperparameterException(InputException):
    pass


class BoundaryParameterException(InputException):
    pass


class MissingHyperparametersException(ConfigurationException):
    pass
