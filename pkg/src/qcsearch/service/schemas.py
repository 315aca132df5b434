"""Request and envelope models for the analysis service."""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..combinatorics import MAX_WIDTH

OutputFormat = Literal["json", "csv"]


class GainRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_WIDTH)
    k: int = Field(ge=0)
    format: OutputFormat = "json"

    @model_validator(mode="after")
    def _k_within_n(self) -> "GainRequest":
        if self.k > self.n:
            raise ValueError(f"k must be <= n={self.n}, got k={self.k}")
        return self


class KoptRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_WIDTH)
    sweep: bool = False
    format: OutputFormat = "json"


class Table1Request(BaseModel):
    format: OutputFormat = "json"


class SimulateRequest(BaseModel):
    strategy: Literal["hybrid", "pure_quantum", "pure_classical", "smart"]
    n: int = Field(ge=1, le=MAX_WIDTH)
    trials: int = Field(ge=2)
    seed: int
    k: Optional[int] = Field(default=None, ge=0)
    engine: Literal["statevector", "idealized"] = "statevector"
    order: Literal["shuffled", "canonical"] = "shuffled"
    format: OutputFormat = "json"


class PromiseRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_WIDTH)
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    g: str = Field(min_length=1, description="'distance' or 'prefix:<bits>'")
    format: OutputFormat = "json"

    @model_validator(mode="after")
    def _k_within_n(self) -> "PromiseRequest":
        if self.k > self.n:
            raise ValueError(f"k must be <= n={self.n}, got k={self.k}")
        return self


class Metadata(BaseModel):
    tool: str
    version: str
    command: str
    seed: Optional[int] = None
    timestamp: str


class Envelope(BaseModel):
    """Response wrapper: metadata carries the timestamp; the payload is
    byte-identical across runs of the same command and seed."""

    format: OutputFormat
    metadata: Metadata
    payload: dict[str, Any]
