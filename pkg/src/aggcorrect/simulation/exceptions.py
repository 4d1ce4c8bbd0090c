from aggcorrect.global_common import ConfigurationException


class InvalidExperimentException(ConfigurationException):
    pass
