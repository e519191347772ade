"""Experiment configuration models and text forms for complex values.

Configs are JSON documents validated by pydantic; Gaussian integers and
complex values travel as "a+bi" strings in configs, CSV, and the service
API.
"""

from __future__ import annotations

import re
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .crt import ModulusSystem, build_system
from .gaussian import GaussianInt, format_gaussian, parse_gaussian

_CNUM_RE = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*"
    r"(?:(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])\s*i)?\s*$"
)


def parse_cnum(text: str) -> complex:
    """Parse a complex value from the "a+bi" text form (floats allowed)."""
    s = str(text).replace("−", "-")
    # allow a leading bare imaginary like "2.5i" or "i"
    if s.strip().endswith("i") and not re.search(r"[+-][^+-]*i\s*$", s.strip()):
        body = s.strip()[:-1].strip()
        if body in ("", "+"):
            return 1j
        if body == "-":
            return -1j
        return complex(0.0, float(body))
    m = _CNUM_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse complex value from {text!r}")
    re_part = float(m.group("re")) if m.group("re") is not None else 0.0
    im_txt = m.group("im")
    if im_txt is None:
        im_part = 0.0
    else:
        im_txt = im_txt.replace(" ", "")
        im_part = 1.0 if im_txt == "+" else -1.0 if im_txt == "-" else float(im_txt)
    return complex(re_part, im_part)


def format_cnum(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


class SystemConfig(BaseModel):
    M: int = Field(ge=1)
    cofactors: list[str] = Field(min_length=1)

    def parsed_cofactors(self) -> list[GaussianInt]:
        return [parse_gaussian(s) for s in self.cofactors]

    def build(self) -> ModulusSystem:
        return build_system(self.M, self.parsed_cofactors())

    @classmethod
    def from_system(cls, sys: ModulusSystem) -> "SystemConfig":
        return cls(M=sys.M, cofactors=[format_gaussian(g) for g in sys.cofactors])


class GridMixin(BaseModel):
    snr_db: Optional[list[float]] = None
    u: Optional[list[float]] = None

    @model_validator(mode="after")
    def _one_grid(self):
        has_snr = bool(self.snr_db)
        has_u = bool(self.u)
        if has_snr == has_u:
            raise ValueError("exactly one nonempty grid (snr_db or u) is required")
        return self


class RmseCampaignConfig(GridMixin):
    campaign: Literal["rmse"] = "rmse"
    system: SystemConfig
    trials: int = Field(default=10000, ge=1)
    seed: int = 0


class TfrCampaignConfig(GridMixin):
    campaign: Literal["tfr"] = "tfr"
    system: SystemConfig
    trials: int = Field(default=10000, ge=1)
    seed: int = 0
    tau: float = Field(gt=0)


class ProbCampaignConfig(BaseModel):
    campaign: Literal["prob"] = "prob"
    M: float = Field(gt=0)
    sigmas: list[float] = Field(min_length=2)
    k_grid: list[float] = Field(min_length=1)
    trials: int = Field(default=100000, ge=1)
    seed: int = 0

    @field_validator("sigmas")
    @classmethod
    def _positive(cls, v):
        if any(s <= 0 for s in v):
            raise ValueError("sigmas must be positive")
        return v


class SignalConfig(BaseModel):
    mode: Literal["random", "constant"] = "random"
    amplitude: float
    a: Optional[float] = None
    b: Optional[float] = None

    @model_validator(mode="after")
    def _constant_needs_ab(self):
        if self.mode == "constant" and (self.a is None or self.b is None):
            raise ValueError("constant mode requires a and b")
        return self


class AdcCampaignConfig(GridMixin):
    campaign: Literal["adc"] = "adc"
    system: SystemConfig
    method: Literal["mle_ccrt", "dual_real"] = "mle_ccrt"
    signal: SignalConfig
    trials: int = Field(default=1, ge=1)
    seed: int = 0
    tau: float = Field(gt=0)
    centering: Literal["none", "signed"] = "signed"


CampaignConfig = RmseCampaignConfig | TfrCampaignConfig | ProbCampaignConfig | AdcCampaignConfig


def load_campaign(data: dict) -> CampaignConfig:
    campaign = data.get("campaign")
    models = {
        "rmse": RmseCampaignConfig,
        "tfr": TfrCampaignConfig,
        "prob": ProbCampaignConfig,
        "adc": AdcCampaignConfig,
    }
    if campaign not in models:
        raise ValueError(f"unknown campaign {campaign!r}; expected one of {sorted(models)}")
    return models[campaign].model_validate(data)
