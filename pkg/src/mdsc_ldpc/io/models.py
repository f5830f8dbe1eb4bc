"""Wire models for parameter documents and run manifests."""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictFloat, StrictInt, StrictStr

from .. import __version__
from ..ensemble import EnsembleParams


class EnsembleParamsModel(BaseModel):
    """JSON form of the ensemble: keys dl, dr, L1, gamma1, L2, gamma2, T and optional M."""

    model_config = ConfigDict(extra="forbid")

    dl: StrictInt = Field(ge=1)
    dr: StrictInt = Field(ge=1)
    L1: StrictInt = Field(ge=1)
    gamma1: StrictInt = Field(ge=1)
    L2: StrictInt = Field(default=1, ge=1)
    gamma2: StrictInt = Field(default=1, ge=1)
    T: Union[StrictInt, StrictFloat, StrictStr] = 0
    M: Optional[StrictInt] = Field(default=None, ge=1)

    def to_params(self) -> EnsembleParams:
        return EnsembleParams(
            dl=self.dl,
            dr=self.dr,
            L1=self.L1,
            gamma1=self.gamma1,
            L2=self.L2,
            gamma2=self.gamma2,
            T=self.T,
            M=self.M,
        )

    @classmethod
    def from_params(cls, p: EnsembleParams) -> "EnsembleParamsModel":
        return cls.model_validate(p.to_dict())


class RunManifest(BaseModel):
    """Provenance attached to every result document."""

    subcommand: str
    params: Optional[Dict[str, Any]] = None
    arguments: Dict[str, Any] = Field(default_factory=dict)
    seeds: Dict[str, int] = Field(default_factory=dict)
    version: str = __version__
    started_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    duration_s: float = 0.0
    config_source: Optional[str] = None


__all__ = ["EnsembleParamsModel", "RunManifest"]
