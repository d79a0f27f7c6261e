"""Models for segment costs and segmentations."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

CostKind = Literal["l2-mean", "l2-constant-reference"]


class SegmentCost(BaseModel):
    """Within-segment homogeneity measure.

    l2-mean: sum of squared deviations from the segment's own mean.
    l2-constant-reference: sum of squared deviations from a fixed reference.
    """

    model_config = ConfigDict(frozen=True)

    kind: CostKind = "l2-mean"
    reference: float = 0.0


class Segmentation(BaseModel):
    """Breakpoints of a series and the penalised objective they achieve.

    A breakpoint is the 0-based index of the first sample of a new segment.
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: tuple[int, ...] = ()
    n_samples: int = Field(ge=2)
    objective: float
    beta: float = Field(ge=0)
    cost: SegmentCost = SegmentCost()
    min_seg_len: int = Field(default=1, ge=1)

    @property
    def k(self) -> int:
        """Number of breakpoints."""
        return len(self.breakpoints)

    @property
    def segments(self) -> list[tuple[int, int]]:
        """Half-open [start, end) ranges of every segment."""
        bounds = (0, *self.breakpoints, self.n_samples)
        return list(zip(bounds[:-1], bounds[1:]))

    @model_validator(mode="after")
    def check_breakpoints(self) -> "Segmentation":
        previous = 0
        for point in self.breakpoints:
            if not previous < point < self.n_samples:
                raise ValueError(
                    f"breakpoints must be strictly increasing inside (0, {self.n_samples}), "
                    f"got {self.breakpoints}"
                )
            previous = point
        return self
