"""ISE statistic and permutation test for hotspot shifts."""

from .ise import ise, permutation_test, pooled_bandwidth, replicate_rng
from .models import IseResult

__all__ = ["IseResult", "ise", "permutation_test", "pooled_bandwidth", "replicate_rng"]
