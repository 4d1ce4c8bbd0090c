from aggcorrect.global_common import InputException, EstimationException


class EmptySamplesException(EstimationException):
    pass


class EmptyRowException(InputException):
    pass
