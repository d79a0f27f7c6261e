"""Kernel bandwidth selection rules."""

import re
from collections.abc import Sequence
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ArgumentError, DegenerateDataError
from .models import PlanarPoint, points_array

DIMENSION = 2

# Normal-reference factors for a 2-D product kernel; both use n^(-1/(d+4))
SILVERMAN_FACTOR = (4.0 / (DIMENSION + 2)) ** (1.0 / (DIMENSION + 4))
SCOTT_FACTOR = 1.0

_FIXED = re.compile(r"^fixed\(\s*([0-9.eE+-]+)\s*\)$")


class BandwidthRule(BaseModel):
    """How to choose the kernel bandwidth."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["silverman", "scott", "fixed"] = "silverman"
    value_m: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def check_value(self) -> "BandwidthRule":
        if (self.kind == "fixed") != (self.value_m is not None):
            raise ValueError("a fixed bandwidth needs exactly one value in meters")
        return self

    def __str__(self) -> str:
        return f"fixed({self.value_m:g})" if self.kind == "fixed" else self.kind


def parse_bandwidth_rule(text: str) -> BandwidthRule:
    """Parse 'silverman', 'scott', 'fixed(250)' or a bare number of meters."""
    text = text.strip().lower()
    if text in ("silverman", "scott"):
        return BandwidthRule(kind=text)
    match = _FIXED.match(text)
    number = match.group(1) if match else text
    try:
        value = float(number)
    except ValueError as e:
        raise ArgumentError(f"Unknown bandwidth rule '{text}'") from e
    if not value > 0:
        raise ArgumentError(f"Fixed bandwidth must be positive, got {value}")
    return BandwidthRule(kind="fixed", value_m=value)


def select_bandwidth(
    points: Sequence[PlanarPoint] | np.ndarray, rule: BandwidthRule | str = "silverman"
) -> float:
    """Bandwidth in meters for a planar point set.

    Data-driven rules use h = factor * (sigma_x + sigma_y) / 2 * n^(-1/6).
    """
    if isinstance(rule, str):
        rule = parse_bandwidth_rule(rule)
    if rule.kind == "fixed":
        return float(rule.value_m)

    xy = points_array(points)
    n = len(xy)
    if n < 2:
        raise ArgumentError(f"The {rule.kind} rule needs at least 2 points, got {n}")
    sigma = float(np.std(xy[:, 0], ddof=1) + np.std(xy[:, 1], ddof=1)) / 2.0
    if sigma == 0.0:
        raise DegenerateDataError(
            f"All {n} points coincide, so the {rule.kind} rule has no spread to use; "
            "pass a fixed(h) bandwidth instead"
        )
    factor = SILVERMAN_FACTOR if rule.kind == "silverman" else SCOTT_FACTOR
    return factor * sigma * n ** (-1.0 / (DIMENSION + 4))
