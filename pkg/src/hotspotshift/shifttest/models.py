"""Result of the ISE two-sample test."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class IseResult(BaseModel):
    """Observed ISE between two density surfaces and its permutation p-value."""

    model_config = ConfigDict(frozen=True)

    ise: float = Field(ge=0)  # per m^2
    p_value: float = Field(ge=0, le=1)
    n_permutations: int
    seed: int
    n_before: int
    n_after: int
    bandwidth_m: float
    null_distribution: Optional[tuple[float, ...]] = None

    @model_validator(mode="after")
    def check_p_value(self) -> "IseResult":
        if self.p_value < 1.0 / (1 + self.n_permutations):
            raise ValueError("p_value is below the add-one minimum 1 / (1 + n_permutations)")
        return self

    def summary_row(self) -> dict[str, float | int]:
        """The one-line CSV record."""
        return {
            "ise": self.ise,
            "p_value": self.p_value,
            "n_permutations": self.n_permutations,
            "seed": self.seed,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "bandwidth_m": self.bandwidth_m,
        }
