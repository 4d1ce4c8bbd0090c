import enum


class PriorName(enum.Enum):
    UNIFORM: str = "uniform"
    JEFFREYS: str = "jeffreys"
    CUSTOM: str = "custom"


UNIFORM_CONCENTRATION: float = 1.0
JEFFREYS_ROW_CONCENTRATION: float = 0.5
