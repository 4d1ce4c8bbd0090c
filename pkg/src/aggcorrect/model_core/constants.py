ROW_SUM_TOLERANCE: float = 1e-9
COUNT_SUM_TOLERANCE: float = 1e-9
INVERSE_TOLERANCE: float = 1e-8
DETERMINANT_THRESHOLD: float = 1e-12
CONDITION_NUMBER_THRESHOLD: float = 1e12
MINIMUM_NUMBER_OF_CLASSES: int = 2

#   Binary layout: index 0 is the positive class, p = P(predict 1 | true 0), q = P(predict 0 | true 1)
POSITIVE_CLASS_INDEX: int = 0
NEGATIVE_CLASS_INDEX: int = 1
