from aggcorrect.global_common import InputException, EstimationException


class RowSumViolationException(InputException):
    pass


class NegativeEntryException(InputException):
    pass


class DimensionMismatchException(InputException):
    pass


class InvalidKException(InputException):
    pass


class IndexOutOfRangeException(InputException):
    pass


class NonFiniteYException(InputException):
    pass


class NotBinaryException(InputException):
    pass


class SingularMatrixException(EstimationException):
    pass
