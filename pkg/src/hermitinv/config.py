"""Configuration loading for hermitinv runs."""
from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from .ff import TABLE_LIMIT, is_prime
from .report import REPORTS_ENV

try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None

LOGGER = logging.getLogger(__name__)

ENV_FILE = "hermitinv.env"

CHECK_NAMES = (
    "field_info",
    "count_points",
    "group_order",
    "verify_invariance",
    "verify_pgl2",
    "verify_dickson",
    "symbolic_dm_identity",
    "symbolic_consistency",
    "degree_census",
    "zero_locus",
    "divisor_census",
    "quotient_eliminate",
)


def _load_yaml(path: Path) -> dict:
    with path.open("r", encoding="utf-8") as handle:
        return yaml.safe_load(handle) or {}


class SampleSettings(BaseModel):
    points: int = Field(default=1000, ge=1, description="Curve points drawn by the invariance sweep")
    elements: int = Field(default=100, ge=1, description="Group elements drawn by the invariance sweep")
    word_length: int = Field(default=6, ge=1, le=64, description="Generators multiplied per random group element")
    pgl2_arguments: int = Field(default=100, ge=1, description="Random arguments per fractional-linear map")
    dickson_matrices: int = Field(default=20, ge=1)
    soundness_points: int = Field(default=100, ge=1, description="Sampled points for plane-model soundness")
    min_value_fraction: float = Field(default=0.5, ge=0, le=1,
                                      description="Minimum share of Value-Value comparisons for a sweep to count")


class BudgetSettings(BaseModel):
    max_enumeration_order: int = Field(default=TABLE_LIMIT, ge=4, description="Largest field order swept by point enumeration")
    max_group_q: int = Field(default=4, ge=2, description="Largest q for the BFS group closure")
    max_symbolic_q: int = Field(default=3, ge=2, description="Largest q for symbolic provers and censuses")
    sylvester_budget: int = Field(default=10 ** 4, ge=1, description="Cap on the squared Sylvester dimension")


class RunConfig(BaseModel):
    p: int = 2
    h: int = Field(default=1, ge=1)
    m: Optional[int] = Field(default=None, ge=1, description="Ambient degree; defaulted per check when omitted")
    k: int = Field(default=1, ge=1, description="Count points over F_{q^(2k)}")
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    workers: int = Field(default=1, ge=1, le=64)
    progress: bool = False
    checks: List[str] = Field(default_factory=lambda: list(CHECK_NAMES))
    output_dir: Optional[str] = None
    samples: SampleSettings = SampleSettings()
    budgets: BudgetSettings = BudgetSettings()

    @field_validator("p")
    @classmethod
    def _validate_p(cls, value: int) -> int:
        if not is_prime(value):
            raise ValueError(f"p={value} is not prime")
        return value

    @field_validator("checks")
    @classmethod
    def _validate_checks(cls, value: List[str]) -> List[str]:
        unknown = sorted(set(value) - set(CHECK_NAMES))
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(unknown)}")
        return value

    @model_validator(mode="after")
    def _validate_m(self) -> "RunConfig":
        if self.m is not None and self.m % (2 * self.h):
            raise ValueError(f"m={self.m} is not a multiple of 2h={2 * self.h}")
        return self

    @property
    def q(self) -> int:
        return self.p ** self.h

    def ambient_degree(self, default_multiple: int) -> int:
        """m when configured, else ``default_multiple`` * 2h."""
        return self.m if self.m is not None else default_multiple * 2 * self.h

    def reports_dir(self) -> Optional[Path]:
        if self.output_dir:
            return Path(self.output_dir)
        env = os.environ.get(REPORTS_ENV)
        return Path(env) if env else None


def load_env(config_path: Optional[Union[str, Path]] = None) -> None:
    """Load hermitinv.env next to the config file, else from the working directory."""
    if load_dotenv is None:
        LOGGER.warning("python-dotenv not installed; skipping %s", ENV_FILE)
        return
    base = Path(config_path).parent if config_path else Path.cwd()
    env_path = base / ENV_FILE
    if env_path.exists():
        LOGGER.info("Loading environment from %s", env_path)
        load_dotenv(env_path)
    else:
        LOGGER.debug("No %s found at %s", ENV_FILE, env_path)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Load a YAML run file into typed settings; an empty file gives the defaults."""
    cfg_path = Path(path)
    if not cfg_path.exists():
        raise FileNotFoundError(f"Config file not found: {cfg_path}")
    return RunConfig.model_validate(_load_yaml(cfg_path))


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    out = dict(base)
    for key, value in override.items():
        if value is None:
            continue
        if isinstance(value, Mapping):
            out[key] = _merge(dict(out.get(key) or {}), value)
        else:
            out[key] = value
    return out


def resolve_config(file_config: Optional[RunConfig], flag_values: Mapping[str, Any]) -> RunConfig:
    """Explicitly set file values overlaid by flags; flags left as None do not override."""
    base = file_config.model_dump(exclude_unset=True) if file_config is not None else {}
    merged = _merge(base, flag_values)
    return RunConfig.model_validate(merged)
