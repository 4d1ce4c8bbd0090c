from typing import Optional

from aggcorrect.global_common import InputException, ConfigurationException


class UnknownLabelException(InputException):
    row_number: Optional[int]

    def __init__(self, message: str, row_number: Optional[int] = None):
        self.row_number = row_number
        super().__init__(message)


class MalformedRowException(InputException):
    pass


class NonNumericYException(InputException):
    pass


class InvalidManifestException(InputException):
    pass


class MissingInputFileException(InputException):
    pass


class InvalidConfigurationException(ConfigurationException):
    pass


class OutputWriteException(InputException):
    pass
