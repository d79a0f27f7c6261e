"""Mobility change point detection."""

from .costs import BoundCost, segment_cost
from .detect import (
    change_date,
    default_beta,
    detect_exact,
    detect_pruned,
    segmentation_cost,
)
from .models import SegmentCost, Segmentation

__all__ = [
    "BoundCost",
    "SegmentCost",
    "Segmentation",
    "change_date",
    "default_beta",
    "detect_exact",
    "detect_pruned",
    "segment_cost",
    "segmentation_cost",
]
