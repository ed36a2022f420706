# -*- coding: utf-8 -*-
# ------------------------------------------------------------------------------
#
#   Copyright 2024 Valory AG
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#
# ------------------------------------------------------------------------------
"""This module contains the configuration of the torus multipliers engine."""
import dataclasses
from pathlib import Path
from typing import Any, Dict

from aea.exceptions import enforce
from aea.helpers.yaml_utils import yaml_load
from aea.skills.base import Model

from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    MAX_ENUMERATION_BOUND,
)


SKILL_YAML = Path(__file__).parent / "skill.yaml"


@dataclasses.dataclass(frozen=True)
class EngineConfig:
    """Engine config dataclass."""

    tolerance: float = 1e-9
    samples: int = 1000
    seed: int = 0
    max_time: float = 10.0
    enumeration_bound: int = 20
    max_workers: int = 1
    continued_fraction_cap: int = 10**6
    precision_bits: int = 64

    def __post_init__(self) -> None:
        """Validate the configuration."""
        enforce(self.tolerance > 0, "tolerance must be positive!")
        enforce(self.samples >= 1, "samples must be at least 1!")
        enforce(self.max_time > 0, "max_time must be positive!")
        enforce(
            0 <= self.enumeration_bound <= MAX_ENUMERATION_BOUND,
            f"enumeration_bound must be in [0, {MAX_ENUMERATION_BOUND}]!",
        )
        enforce(self.max_workers >= 1, "max_workers must be at least 1!")
        enforce(self.continued_fraction_cap >= 1, "continued_fraction_cap must be at least 1!")
        enforce(self.precision_bits >= 16, "precision_bits must be at least 16!")

    @staticmethod
    def from_dict(raw_dict: Dict[str, Any]) -> "EngineConfig":
        """From dict."""
        defaults = EngineConfig()
        return EngineConfig(
            tolerance=float(raw_dict.get("tolerance", defaults.tolerance)),
            samples=int(raw_dict.get("samples", defaults.samples)),
            seed=int(raw_dict.get("seed", defaults.seed)),
            max_time=float(raw_dict.get("max_time", defaults.max_time)),
            enumeration_bound=int(
                raw_dict.get("enumeration_bound", defaults.enumeration_bound)
            ),
            max_workers=int(raw_dict.get("max_workers", defaults.max_workers)),
            continued_fraction_cap=int(
                raw_dict.get("continued_fraction_cap", defaults.continued_fraction_cap)
            ),
            precision_bits=int(raw_dict.get("precision_bits", defaults.precision_bits)),
        )

    def override(self, **overrides: Any) -> "EngineConfig":
        """Get a copy with the given non-None values replaced."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return dataclasses.replace(self, **changes)


def load_default_config(path: Path = SKILL_YAML) -> EngineConfig:
    """Read the default configuration from the params model of the skill configuration."""
    with open(path, "r", encoding="utf-8") as file:
        configuration = yaml_load(stream=file)
    return EngineConfig.from_dict(configuration["models"]["params"]["args"])


class Params(Model):
    """A model to represent the engine params."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """Initialize the parameters object."""
        known = {field.name for field in dataclasses.fields(EngineConfig)}
        self.config = EngineConfig.from_dict(
            {key: value for key, value in kwargs.items() if key in known}
        )
        for key in known:
            kwargs.pop(key, None)
        super().__init__(*args, **kwargs)
