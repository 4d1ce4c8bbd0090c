DEFAULT_TOLERANCE: float = 1e-12
HULL_TOLERANCE: float = 1e-9
