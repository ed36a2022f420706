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
"""Algebraic quasiperiodic flows on tori, their generalized symmetries and multiplier groups."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import lcm
from typing import List, Optional, Sequence, Tuple

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.errors import (
    BoundTooLarge,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NotASymmetry,
    NotFullRank,
    NotRealizable,
    UnsupportedDegree,
)
from packages.valory.skills.torus_multipliers.utils.lattice import (
    CONTINUED_FRACTION_CAP,
    Lattice,
    UnitGroup,
    discrete_log_rank1,
    fundamental_unit_real_quadratic,
    lattice_from_generators,
    multiplier_ring,
    quadratic_maximal_order,
    unit_group_of_order,
)
from packages.valory.skills.torus_multipliers.utils.linalg import (
    IntMatrix,
    RatMatrix,
    det,
    inverse,
)
from packages.valory.skills.torus_multipliers.utils.number_field import (
    FieldElement,
    NumberField,
    minimal_polynomial,
)


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.torus_flow"
)

MAX_ENUMERATION_DIMENSION = 3
MAX_ENUMERATION_BOUND = 30

Translation = Optional[Tuple[Fraction, ...]]


@dataclass(frozen=True)
class TorusFlowSpec:
    """The constant vector field flow on T^n with frequencies forming a basis of a field."""

    field: NumberField
    omega: Tuple[FieldElement, ...]
    scale: Optional[Fraction] = None

    def __post_init__(self) -> None:
        """Validate the algebraic flow condition."""
        if len(self.omega) != self.field.degree:
            raise DimensionMismatch(
                f"{len(self.omega)} frequencies for a field of degree {self.field.degree}"
            )
        if any(w.field != self.field for w in self.omega):
            raise FieldMismatch("frequencies must lie in the flow's field")
        if det(self.coefficient_matrix) == 0:
            raise NotFullRank("frequencies are linearly dependent over Q")

    @classmethod
    def from_coords(
        cls,
        field: NumberField,
        omega: Sequence[Sequence[Fraction]],
        scale: Optional[Fraction] = None,
    ) -> "TorusFlowSpec":
        """Build a flow from frequency coordinate vectors."""
        return cls(field, tuple(field.element(w) for w in omega), scale)

    @property
    def n(self) -> int:
        """Get the torus dimension."""
        return len(self.omega)

    @property
    def coefficient_matrix(self) -> RatMatrix:
        """Get the matrix whose columns are the frequency coordinates."""
        return RatMatrix(tuple(zip(*(w.coords for w in self.omega))))

    def scaled(self, factor: Fraction) -> "TorusFlowSpec":
        """Get the flow with every frequency multiplied by a rational factor."""
        return TorusFlowSpec(self.field, tuple(w * factor for w in self.omega), self.scale)


@dataclass(frozen=True)
class Symmetry:
    """An affine generalized symmetry x -> B x + c pushing the flow to alpha times itself."""

    matrix: IntMatrix
    multiplier: FieldElement
    translation: Translation = None


def frequency_lattice(flow: TorusFlowSpec) -> Lattice:
    """Get the Z-span of the frequencies."""
    return lattice_from_generators(flow.field, flow.omega)


def symmetry_from_matrix(
    flow: TorusFlowSpec, matrix: IntMatrix, translation: Translation = None
) -> Symmetry:
    """
    Recognize an integer matrix as a generalized symmetry.

    :param flow: the flow.
    :param matrix: the candidate linear part B.
    :param translation: the optional translation c.
    :return: the symmetry with B omega = alpha omega.
    """
    if matrix.n != flow.n:
        raise DimensionMismatch(f"{matrix.n}x{matrix.n} matrix for a flow on T^{flow.n}")
    image = matrix.apply(flow.omega)
    alpha = image[0] / flow.omega[0]
    if any(value != alpha * w for value, w in zip(image, flow.omega)):
        raise NotASymmetry("B omega is not a multiple of omega")
    if abs(det(matrix)) != 1:
        raise NotASymmetry("non-unimodular", alpha)
    return Symmetry(matrix, alpha, translation)


def multiplication_matrix(flow: TorusFlowSpec, alpha: FieldElement) -> RatMatrix:
    """Get the rational matrix M with M omega = alpha omega."""
    if alpha.is_zero:
        raise DivisionByZero("the multiplier must be nonzero")
    images = RatMatrix(tuple(zip(*((alpha * w).coords for w in flow.omega))))
    return (inverse(flow.coefficient_matrix) @ images).transpose()


def matrix_from_multiplier(flow: TorusFlowSpec, alpha: FieldElement) -> IntMatrix:
    """
    Get the integer matrix realizing a multiplier.

    :param flow: the flow.
    :param alpha: a nonzero field element.
    :return: the matrix of multiplication by alpha in the frequency basis.
    """
    matrix = multiplication_matrix(flow, alpha)
    if not matrix.is_integral():
        raise NotRealizable(matrix)
    return matrix.to_integer()


def multiplier_group(
    flow: TorusFlowSpec,
    candidates: Optional[Sequence[FieldElement]] = None,
    cap: int = CONTINUED_FRACTION_CAP,
) -> UnitGroup:
    """Get the multiplier group as the units of the frequency lattice's multiplier ring."""
    return unit_group_of_order(multiplier_ring(frequency_lattice(flow)), candidates, cap)


class MultiplierStatus(Enum):
    """Whether a flow has a multiplier other than +1 and -1."""

    PRESENT = "present"
    ABSENT = "absent"
    UNKNOWN = "unknown"


def has_nontrivial_multiplier(
    flow: TorusFlowSpec, candidates: Optional[Sequence[FieldElement]] = None
) -> Tuple[MultiplierStatus, Optional[FieldElement]]:
    """Decide whether a nontrivial multiplier exists, with a generator as witness."""
    group = multiplier_group(flow, candidates)
    if group.rank > 0:
        return MultiplierStatus.PRESENT, group.generators[0]
    if group.complete:
        return MultiplierStatus.ABSENT, None
    return MultiplierStatus.UNKNOWN, None


def _scan_first_rows(
    basis: Sequence[Sequence[Sequence[int]]],
    denominator: int,
    bound: int,
    leading: Sequence[int],
) -> List[Tuple[Tuple[int, ...], ...]]:
    """
    Scan first rows with fixed leading entries for unimodular integral matrices.

    The matrix is linear in its first row r: M = (sum_j r_j K_j) / D.

    :param basis: the integer matrices K_j.
    :param denominator: the common denominator D.
    :param bound: the entry bound.
    :param leading: the values of r_0 to scan.
    :return: the matching matrices as rows.
    """
    n = len(basis)
    found = []
    for r0 in leading:
        for rest in product(range(-bound, bound + 1), repeat=n - 1):
            row = (r0,) + rest
            if not any(row):
                continue
            entries = []
            for i in range(n):
                for j in range(n):
                    value = sum(r * k[i][j] for r, k in zip(row, basis))
                    if value % denominator or abs(value // denominator) > bound:
                        break
                    entries.append(value // denominator)
                else:
                    continue
                break
            else:
                candidate = IntMatrix(tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n)))
                if abs(det(candidate)) == 1:
                    found.append(candidate.rows)
    return found


def enumerate_symmetries_bounded(
    flow: TorusFlowSpec, bound: int, max_workers: int = 1
) -> List[Symmetry]:
    """
    Find every symmetry matrix with entries bounded in absolute value.

    The first row of a symmetry determines its multiplier and hence the whole
    matrix, so only first rows are scanned.

    :param flow: the flow.
    :param bound: the entry bound.
    :param max_workers: the number of worker processes.
    :return: the symmetries in lexicographic order of their matrices.
    """
    if flow.n > MAX_ENUMERATION_DIMENSION or not 0 <= bound <= MAX_ENUMERATION_BOUND:
        raise BoundTooLarge(
            f"enumeration needs n <= {MAX_ENUMERATION_DIMENSION} and "
            f"0 <= bound <= {MAX_ENUMERATION_BOUND}, got n = {flow.n}, bound = {bound}"
        )
    ratios = [w / flow.omega[0] for w in flow.omega]
    rational = [multiplication_matrix(flow, ratio) for ratio in ratios]
    denominator = lcm(*(m.denominator for m in rational))
    basis = [m.scaled(Fraction(denominator)).to_integer().rows for m in rational]

    leading = list(range(-bound, bound + 1))
    if max_workers > 1:
        chunks = [leading[i::max_workers] for i in range(max_workers)]
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            parts = executor.map(
                _scan_first_rows,
                [basis] * max_workers,
                [denominator] * max_workers,
                [bound] * max_workers,
                chunks,
            )
            rows = [matrix for part in parts for matrix in part]
    else:
        rows = _scan_first_rows(basis, denominator, bound, leading)

    _logger.debug(f"Found {len(rows)} symmetries with entries bounded by {bound}")
    return [symmetry_from_matrix(flow, IntMatrix(matrix)) for matrix in sorted(rows)]


def frequency_ratio(
    flow: TorusFlowSpec, i: int = 0, j: int = 1
) -> Tuple[FieldElement, List[Fraction]]:
    """Get the frequency ratio omega_i / omega_j with its minimal polynomial."""
    ratio = flow.omega[i] / flow.omega[j]
    return ratio, minimal_polynomial(ratio)


def ratio_representation(flow: TorusFlowSpec, alpha: FieldElement) -> Tuple[int, int]:
    """
    Write a multiplier of a flow on T^2 through the frequency ratio.

    :param flow: a flow on T^2.
    :param alpha: the multiplier.
    :return: integers (u1, u2) with alpha = u1 (omega_1 / omega_2) + u2.
    """
    if flow.n != 2:
        raise UnsupportedDegree("ratio representations are defined on T^2")
    ratio, _ = frequency_ratio(flow)
    system = RatMatrix(tuple(zip(ratio.coords, flow.field.one.coords)))
    u1, u2 = inverse(system).apply(alpha.coords)
    if u1.denominator != 1 or u2.denominator != 1:
        raise NotRealizable((u1, u2))
    return int(u1), int(u2)


def unit_index_in_maximal(flow: TorusFlowSpec) -> int:
    """Get the index of the multiplier group in the units of the ring of integers."""
    if flow.field.degree != 2:
        raise UnsupportedDegree("unit indices are computed for quadratic fields")
    generator = multiplier_group(flow).generators[0]
    epsilon = fundamental_unit_real_quadratic(quadratic_maximal_order(flow.field))
    _, exponent = discrete_log_rank1(generator, epsilon)
    return abs(exponent)
