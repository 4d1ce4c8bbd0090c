from aggcorrect.global_common import InputException


class InvalidRegionException(InputException):
    pass
