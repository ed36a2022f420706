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
"""Semiconjugacies between torus flows and the transfer of symmetries and multipliers across them."""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Tuple

from aea.exceptions import enforce

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.errors import (
    DimensionMismatch,
    NotASubgroup,
    NotInGroup,
    NotSurjective,
    UnsupportedDegree,
)
from packages.valory.skills.torus_multipliers.utils.lattice import (
    CONTINUED_FRACTION_CAP,
    UnitGroup,
    discrete_log,
    discrete_log_rank1,
)
from packages.valory.skills.torus_multipliers.utils.linalg import (
    IntMatrix,
    RatMatrix,
    det,
    inverse,
    matrix_order_mod,
)
from packages.valory.skills.torus_multipliers.utils.number_field import FieldElement
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    Symmetry,
    TorusFlowSpec,
    Translation,
    matrix_from_multiplier,
    multiplier_group,
    symmetry_from_matrix,
    unit_index_in_maximal,
)


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.semiconjugacy"
)


def _translation(vector: Translation, n: int) -> Tuple[Fraction, ...]:
    """Get a translation, zero when absent."""
    return tuple(vector) if vector is not None else (Fraction(0),) * n


def _add(*vectors: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Add vectors."""
    return tuple(sum(entries, Fraction(0)) for entries in zip(*vectors))


def _sub(left: Sequence[Fraction], right: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Subtract vectors."""
    return tuple(a - b for a, b in zip(left, right))


@dataclass(frozen=True)
class SemiconjugacyMap:
    """The torus map x -> B x + c induced by a nonsingular integer matrix."""

    matrix: IntMatrix
    translation: Translation = None

    def __post_init__(self) -> None:
        """Reject maps that are not surjective."""
        if det(self.matrix) == 0:
            raise NotSurjective()
        if self.translation is not None:
            if len(self.translation) != self.matrix.n:
                raise DimensionMismatch("translation length differs from the matrix size")
            object.__setattr__(
                self, "translation", tuple(Fraction(c) for c in self.translation)
            )

    @property
    def covering_degree(self) -> int:
        """Get the number of preimages of a point, |det B|."""
        return abs(int(det(self.matrix)))


@dataclass(frozen=True)
class PushResult:
    """The flow a semiconjugacy maps onto."""

    target_flow: TorusFlowSpec
    covering_degree: int
    algebraic: bool = True


@dataclass(frozen=True)
class PowerPush:
    """A symmetry of the target obtained from the minimal power of a source symmetry."""

    k: int
    symmetry: Symmetry
    rejected: Tuple[RatMatrix, ...] = ()


def compose_maps(first: SemiconjugacyMap, second: SemiconjugacyMap) -> SemiconjugacyMap:
    """Get first o second, x -> B1 (B2 x + c2) + c1."""
    if first.translation is None and second.translation is None:
        return SemiconjugacyMap(first.matrix @ second.matrix)
    n = first.matrix.n
    translation = _add(
        first.matrix.to_rational().apply(_translation(second.translation, n)),
        _translation(first.translation, n),
    )
    return SemiconjugacyMap(first.matrix @ second.matrix, translation)


def push_flow(semiconjugacy: SemiconjugacyMap, flow: TorusFlowSpec) -> PushResult:
    """
    Push a flow forward along a semiconjugacy.

    :param semiconjugacy: the map V.
    :param flow: the source flow.
    :return: the target flow with frequencies B omega and the covering degree.
    """
    if semiconjugacy.matrix.n != flow.n:
        raise DimensionMismatch(
            f"{semiconjugacy.matrix.n}x{semiconjugacy.matrix.n} map for a flow on T^{flow.n}"
        )
    omega = tuple(semiconjugacy.matrix.apply(flow.omega))
    target = TorusFlowSpec(flow.field, omega, flow.scale)
    return PushResult(target, semiconjugacy.covering_degree)


def verify_semiconjugacy(
    semiconjugacy: SemiconjugacyMap, source: TorusFlowSpec, target: TorusFlowSpec
) -> bool:
    """Check exactly that B omega_source equals omega_target."""
    if semiconjugacy.matrix.n != source.n or source.n != target.n:
        return False
    if source.field != target.field:
        return False
    return tuple(semiconjugacy.matrix.apply(source.omega)) == target.omega


def lift_symmetry(
    semiconjugacy: SemiconjugacyMap, source: TorusFlowSpec, symmetry: Symmetry
) -> Symmetry:
    """
    Lift a symmetry of the target flow to the source flow.

    :param semiconjugacy: the map V.
    :param source: the source flow.
    :param symmetry: a symmetry Q of the pushed flow.
    :return: the symmetry R with Q V = V R and the same multiplier.
    """
    target = push_flow(semiconjugacy, source).target_flow
    checked = symmetry_from_matrix(target, symmetry.matrix, symmetry.translation)
    v, q = semiconjugacy.matrix, symmetry.matrix
    v_inverse = inverse(v)
    lifted = v_inverse @ q @ v
    enforce(lifted.is_integral(), f"lifted matrix {lifted} is not integral")
    matrix = lifted.to_integer()
    enforce(q @ v == v @ matrix, "Q V = V R fails")

    translation = None
    if semiconjugacy.translation is not None or symmetry.translation is not None:
        n = v.n
        c_v = _translation(semiconjugacy.translation, n)
        c_q = _translation(symmetry.translation, n)
        translation = tuple(
            v_inverse.apply(_sub(_add(q.to_rational().apply(c_v), c_q), c_v))
        )
    result = symmetry_from_matrix(source, matrix, translation)
    enforce(result.multiplier == checked.multiplier, "lifted multiplier differs")
    return result


def push_symmetry_power(
    semiconjugacy: SemiconjugacyMap, source: TorusFlowSpec, symmetry: Symmetry
) -> PowerPush:
    """
    Push the minimal power of a source symmetry that descends to the target.

    V B_R^k V^-1 is integral exactly when B_R^k V adj(V) is divisible by
    det V, which depends only on B_R^k modulo |det V|, so k never exceeds the
    order of B_R modulo |det V|.

    :param semiconjugacy: the map V.
    :param source: the source flow.
    :param symmetry: a symmetry R of the source flow.
    :return: the minimal k, the symmetry Q with Q V = V R^k and the rejected C_j.
    """
    checked = symmetry_from_matrix(source, symmetry.matrix, symmetry.translation)
    target = push_flow(semiconjugacy, source).target_flow
    v, r = semiconjugacy.matrix, symmetry.matrix
    v_inverse = inverse(v)
    bound = matrix_order_mod(r, semiconjugacy.covering_degree)
    n = v.n
    c_r = _translation(symmetry.translation, n)

    rejected: List[RatMatrix] = []
    power = IntMatrix.identity(n)
    power_translation = (Fraction(0),) * n
    for k in range(1, bound + 1):
        power_translation = _add(r.to_rational().apply(power_translation), c_r)
        power = power @ r
        candidate = v @ power @ v_inverse
        if not candidate.is_integral():
            _logger.debug(f"C_{k} = {candidate} is not integral")
            rejected.append(candidate)
            continue
        matrix = candidate.to_integer()
        translation = None
        if semiconjugacy.translation is not None or symmetry.translation is not None:
            c_v = _translation(semiconjugacy.translation, n)
            translation = _sub(
                _add(v.to_rational().apply(power_translation), c_v),
                matrix.to_rational().apply(c_v),
            )
        pushed = symmetry_from_matrix(target, matrix, translation)
        enforce(pushed.multiplier == checked.multiplier**k, "multiplier power law fails")
        return PowerPush(k, pushed, tuple(rejected))
    enforce(False, f"no power of {r} up to {bound} descends through {v}")
    raise AssertionError  # pragma: nocover


def subgroup_index_rank1(group: UnitGroup, subgroup: UnitGroup) -> int:
    """
    Get the index of a rank one unit group in another.

    Both groups share the torsion {+1, -1}, so the index is the exponent of the
    subgroup generator.

    :param group: the group G.
    :param subgroup: the subgroup H.
    :return: [G : H].
    """
    if group.rank != 1 or subgroup.rank != 1:
        raise UnsupportedDegree("both groups must have rank one")
    try:
        _, exponent = discrete_log_rank1(subgroup.generators[0], group.generators[0])
    except NotInGroup as e:
        raise NotASubgroup(str(e)) from e
    if exponent == 0:
        raise NotASubgroup("the subgroup generator is torsion")
    return abs(exponent)


def subgroup_index(group: UnitGroup, subgroup: UnitGroup) -> int:
    """
    Get the index of a unit group in another of the same rank.

    Beyond rank one this is |det| of the exponent matrix of the subgroup
    generators and is only as complete as the supplied generators.

    :param group: the group G.
    :param subgroup: the subgroup H.
    :return: [G : H].
    """
    if group.rank != subgroup.rank:
        raise NotASubgroup(f"rank {subgroup.rank} subgroup of a rank {group.rank} group")
    if group.rank == 0:
        return 1
    if group.rank == 1:
        return subgroup_index_rank1(group, subgroup)
    columns = []
    for generator in subgroup.generators:
        try:
            _, exponents = discrete_log(generator, group.generators)
        except NotInGroup as e:
            raise NotASubgroup(str(e)) from e
        columns.append(exponents)
    index = abs(int(det(IntMatrix(tuple(zip(*columns))))))
    if index == 0:
        raise NotASubgroup("the subgroup has infinite index")
    return index


@dataclass(frozen=True)
class PowerSubgroup:
    """The subgroup generated by the minimal descending powers of the source generators."""

    exponents: Tuple[int, ...]
    group: UnitGroup

    @property
    def index(self) -> int:
        """Get the index in the source multiplier group."""
        return prod(self.exponents)


def power_subgroup(
    semiconjugacy: SemiconjugacyMap,
    source: TorusFlowSpec,
    source_group: UnitGroup,
    target_group: UnitGroup,
) -> PowerSubgroup:
    """Push every source generator to its minimal power that is a target multiplier."""
    exponents, generators = [], []
    for generator in source_group.generators:
        symmetry = symmetry_from_matrix(source, matrix_from_multiplier(source, generator))
        pushed = push_symmetry_power(semiconjugacy, source, symmetry)
        exponents.append(pushed.k)
        generators.append(pushed.symmetry.multiplier)
    group = UnitGroup(target_group.order, tuple(generators), False)
    return PowerSubgroup(tuple(exponents), group)


@dataclass(frozen=True)
class PipelineReport:
    """Everything computed for a flow and a semiconjugacy."""

    source: TorusFlowSpec
    push: PushResult
    source_group: UnitGroup
    target_group: UnitGroup
    containment: Tuple[Tuple[FieldElement, IntMatrix], ...]
    index: int
    power: PowerSubgroup
    power_index: int
    unit_index: Optional[int] = None
    notes: Tuple[str, ...] = dataclass_field(default_factory=tuple)

    @property
    def complete(self) -> bool:
        """Check whether both multiplier groups are known completely."""
        return self.source_group.complete and self.target_group.complete


def full_pipeline(
    source: TorusFlowSpec,
    semiconjugacy: SemiconjugacyMap,
    source_candidates: Optional[Sequence[FieldElement]] = None,
    target_candidates: Optional[Sequence[FieldElement]] = None,
    cap: int = CONTINUED_FRACTION_CAP,
) -> PipelineReport:
    """
    Push a flow, compute both multiplier groups and relate them.

    :param source: the flow phi.
    :param semiconjugacy: the map V.
    :param source_candidates: unit candidates for phi when the degree is at least 3.
    :param target_candidates: unit candidates for psi when the degree is at least 3.
    :param cap: the continued fraction step cap.
    :return: the report.
    """
    push = push_flow(semiconjugacy, source)
    target = push.target_flow
    source_group = multiplier_group(source, source_candidates, cap)
    target_group = multiplier_group(target, target_candidates, cap)

    notes = []
    if target_group.rank < source_group.rank and not target_candidates:
        # descending powers of verified source units are verified target units
        power = power_subgroup(semiconjugacy, source, source_group, target_group)
        target_group = multiplier_group(target, list(power.group.generators), cap)
        notes.append("target_generators_from_powers")
        _logger.warning(
            "No target candidates: using the descending powers of the source generators"
        )

    containment = []
    for generator in target_group.generators:
        matrix = matrix_from_multiplier(source, generator)
        enforce(abs(det(matrix)) == 1, f"{generator} is not a multiplier of the source")
        containment.append((generator, matrix))

    index = subgroup_index(source_group, target_group)
    power = power_subgroup(semiconjugacy, source, source_group, target_group)
    power_index = subgroup_index(target_group, power.group)
    enforce(power.index == index * power_index, "[M : G] = [M : N][N : G] fails")

    if not source_group.complete or not target_group.complete:
        notes.append("requires_user_generators")
    unit_index = unit_index_in_maximal(source) if source.field.degree == 2 else None
    _logger.info(
        f"Pushed along a degree {push.covering_degree} covering, multiplier index {index}"
    )
    return PipelineReport(
        source,
        push,
        source_group,
        target_group,
        tuple(containment),
        index,
        power,
        power_index,
        unit_index,
        tuple(notes),
    )
