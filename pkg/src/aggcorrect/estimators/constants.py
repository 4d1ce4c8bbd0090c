from typing import Tuple

SUMMARY_QUANTILES: Tuple[float, ...] = (0.025, 0.25, 0.5, 0.75, 0.975)
