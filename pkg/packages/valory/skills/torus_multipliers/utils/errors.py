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
"""Errors raised by the torus multipliers engine."""

from enum import Enum
from typing import Any, Optional


class ExitCode(Enum):
    """Process exit codes used by the command line front end."""

    SUCCESS = 0
    INPUT_ERROR = 2
    MATH_ERROR = 3
    ACCEPTANCE_MISMATCH = 4


class TorusMultipliersError(Exception):
    """Base class for all engine errors."""

    exit_code: ExitCode = ExitCode.MATH_ERROR


class InputError(TorusMultipliersError):
    """The input could not be parsed or is inconsistent."""

    exit_code = ExitCode.INPUT_ERROR


class MathError(TorusMultipliersError):
    """A computation hit a mathematical obstruction."""

    exit_code = ExitCode.MATH_ERROR


class ScenarioError(InputError):
    """A scenario file violates the schema."""


class DimensionMismatch(InputError):
    """Objects of incompatible dimension were combined."""


class InvalidField(InputError):
    """A defining polynomial does not describe a usable real number field."""


class FieldMismatch(InputError):
    """Elements of different number fields were combined."""


class SingularMatrix(MathError):
    """A matrix that must be invertible is singular."""


class OrderNotFound(MathError):
    """No multiplicative order was found below the search cap."""


class DivisionByZero(MathError):
    """Inversion of the zero field element."""


class ReduciblePolynomial(MathError):
    """The defining polynomial factors over Q."""


class NotFullRank(MathError):
    """Generators do not span the field over Q."""


class NotASublattice(MathError):
    """A lattice is not contained in the other one."""


class UnsupportedDegree(MathError):
    """The operation is only implemented for other field degrees."""


class NotInGroup(MathError):
    """A unit is not a signed power product of the given generators."""


class NotAUnit(MathError):
    """A candidate is not a unit of the order."""


class NotASubgroup(MathError):
    """A group is not contained in the other one."""


class BoundTooLarge(MathError):
    """An enumeration guard was exceeded."""


class NotSurjective(MathError):
    """A torus map with singular linear part cannot be a semiconjugacy."""

    def __init__(self, message: str = "not surjective (det = 0)") -> None:
        """Initialize the error with the default message."""
        super().__init__(message)


class NotASymmetry(MathError):
    """A matrix does not induce a generalized symmetry of the flow."""

    def __init__(self, reason: str, multiplier: Optional[Any] = None) -> None:
        """Initialize the error with its reason and the multiplier, if any."""
        super().__init__(f"not a symmetry: {reason}")
        self.reason = reason
        self.multiplier = multiplier


class NotRealizable(MathError):
    """A multiplier is not realized by an integer matrix."""

    def __init__(self, matrix: Any) -> None:
        """Initialize the error with the rational solution for diagnostics."""
        super().__init__(f"multiplier is not realizable over Z: {matrix}")
        self.matrix = matrix
