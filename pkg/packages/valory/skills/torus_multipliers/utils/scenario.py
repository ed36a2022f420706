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
"""Scenario files: the JSON input of the command line front end."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, List, Optional, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, ValidationError, field_validator

from packages.valory.skills.torus_multipliers.utils.errors import ScenarioError
from packages.valory.skills.torus_multipliers.utils.linalg import IntMatrix
from packages.valory.skills.torus_multipliers.utils.number_field import (
    FieldElement,
    NumberField,
)
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import SemiconjugacyMap
from packages.valory.skills.torus_multipliers.utils.torus_flow import TorusFlowSpec


COMMANDS = ("multipliers", "push", "lift-sym", "push-sym", "index", "verify", "enumerate")


def _rational_string(value: Union[str, int]) -> str:
    """Normalize a rational given as an integer or a "p/q" string."""
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValueError(f"rationals are strings or integers, got {value!r}")
    try:
        return str(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"invalid rational {value!r}") from e


RationalString = Annotated[str, BeforeValidator(_rational_string)]
Coordinates = List[RationalString]


class FieldModel(BaseModel):
    """A number field: defining polynomial, constant term first."""

    model_config = ConfigDict(extra="forbid")

    poly: List[RationalString]
    root_hint: Optional[List[RationalString]] = None
    assume_irreducible: bool = False

    @field_validator("poly")
    @classmethod
    def _integral(cls, poly: List[str]) -> List[str]:
        """Check that the coefficients are integers."""
        if any(Fraction(c).denominator != 1 for c in poly):
            raise ValueError("defining polynomial coefficients must be integers")
        return poly

    @field_validator("root_hint")
    @classmethod
    def _interval(cls, hint: Optional[List[str]]) -> Optional[List[str]]:
        """Check that the hint is an interval."""
        if hint is not None and len(hint) != 2:
            raise ValueError("root_hint must be [lo, hi]")
        return hint


class FlowModel(BaseModel):
    """A flow: frequency coordinate vectors."""

    model_config = ConfigDict(extra="forbid")

    omega: List[Coordinates]
    scale: Optional[RationalString] = None


class AffineModel(BaseModel):
    """An integer matrix with an optional rational translation."""

    model_config = ConfigDict(extra="forbid")

    matrix: List[List[int]]
    translation: Optional[Coordinates] = None


class CandidatesModel(BaseModel):
    """Unit candidates for fields of degree at least 3."""

    model_config = ConfigDict(extra="forbid")

    flow: List[Coordinates] = []
    target: List[Coordinates] = []


class SubgroupModel(BaseModel):
    """Generators of a unit group and of a subgroup."""

    model_config = ConfigDict(extra="forbid")

    group: List[Coordinates]
    subgroup: List[Coordinates]


class Scenario(BaseModel):
    """A scenario file."""

    model_config = ConfigDict(extra="forbid")

    field: FieldModel
    flow: FlowModel
    target: Optional[FlowModel] = None
    map: Optional[AffineModel] = None
    symmetry: Optional[AffineModel] = None
    target_symmetry: Optional[AffineModel] = None
    candidates: Optional[CandidatesModel] = None
    subgroup: Optional[SubgroupModel] = None
    run: List[str] = []

    @field_validator("run")
    @classmethod
    def _known_commands(cls, run: List[str]) -> List[str]:
        """Check the requested computations."""
        unknown = sorted(set(run) - set(COMMANDS))
        if unknown:
            raise ValueError(f"unknown computations {unknown}")
        return run

    def build_field(self) -> NumberField:
        """Build the number field."""
        hint = self.field.root_hint
        return NumberField.from_poly(
            [int(Fraction(c)) for c in self.field.poly],
            None if hint is None else (Fraction(hint[0]), Fraction(hint[1])),
            self.field.assume_irreducible,
        )

    @staticmethod
    def _flow(field: NumberField, model: FlowModel) -> TorusFlowSpec:
        """Build a flow."""
        scale = None if model.scale is None else Fraction(model.scale)
        return TorusFlowSpec.from_coords(
            field, [[Fraction(c) for c in w] for w in model.omega], scale
        )

    def build_flow(self, field: NumberField) -> TorusFlowSpec:
        """Build the source flow."""
        return self._flow(field, self.flow)

    def build_target(self, field: NumberField) -> TorusFlowSpec:
        """Build the target flow."""
        return self._flow(field, self._require(self.target, "target"))

    @staticmethod
    def _require(value: Optional[BaseModel], name: str) -> BaseModel:
        """Get an optional section that a computation needs."""
        if value is None:
            raise ScenarioError(f"the scenario has no '{name}' section")
        return value

    @staticmethod
    def _translation(model: AffineModel) -> Optional[tuple]:
        """Get the translation of an affine section."""
        if model.translation is None:
            return None
        return tuple(Fraction(c) for c in model.translation)

    def build_map(self) -> SemiconjugacyMap:
        """Build the semiconjugacy."""
        model = self._require(self.map, "map")
        return SemiconjugacyMap(IntMatrix(model.matrix), self._translation(model))

    def affine(self, name: str) -> Tuple[IntMatrix, Optional[tuple]]:
        """Build the matrix and translation of the "symmetry" or "target_symmetry" section."""
        model = self._require(getattr(self, name), name)
        return IntMatrix(model.matrix), self._translation(model)

    @staticmethod
    def elements(field: NumberField, coords: List[List[str]]) -> List[FieldElement]:
        """Build field elements from coordinate strings."""
        return [field.element([Fraction(c) for c in element]) for element in coords]


def parse_scenario(data: object) -> Scenario:
    """Validate decoded JSON as a scenario."""
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"invalid scenario: {e}") from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read and validate a scenario file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}") from e
    return parse_scenario(data)
