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
"""Tests for semiconjugacies and the transport of symmetries."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packages.valory.skills.torus_multipliers.tests.constants import (
    CUBE_ROOT2,
    PHI,
    PHI_SQRT3,
    PSI,
    Q,
    R,
    SQRT2,
    SQRT3,
    V,
    V_SQRT3,
    sqrt2,
)
from packages.valory.skills.torus_multipliers.utils.errors import (
    DimensionMismatch,
    NotASubgroup,
    NotASymmetry,
    NotSurjective,
    UnsupportedDegree,
)
from packages.valory.skills.torus_multipliers.utils.lattice import (
    UnitGroup,
    quadratic_maximal_order,
    unit_group_of_order,
)
from packages.valory.skills.torus_multipliers.utils.linalg import IntMatrix, RatMatrix, inverse
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import (
    SemiconjugacyMap,
    compose_maps,
    full_pipeline,
    lift_symmetry,
    push_flow,
    push_symmetry_power,
    subgroup_index,
    subgroup_index_rank1,
    verify_semiconjugacy,
)
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    Symmetry,
    TorusFlowSpec,
    matrix_from_multiplier,
    multiplier_group,
    symmetry_from_matrix,
)


def nonsingular_maps() -> st.SearchStrategy:
    """Strategy for linear surjections of T^2 with small entries."""
    entries = st.integers(min_value=-5, max_value=5)
    return (
        st.tuples(entries, entries, entries, entries)
        .filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0)
        .map(lambda t: SemiconjugacyMap(IntMatrix(((t[0], t[1]), (t[2], t[3])))))
    )


class TestSemiconjugacyMap:
    """Tests for torus maps and pushed flows."""

    def test_not_surjective(self) -> None:
        """Test that singular maps are rejected with the documented message."""
        with pytest.raises(NotSurjective, match=r"not surjective \(det = 0\)"):
            SemiconjugacyMap(IntMatrix(((1, 2), (2, 4))))

    def test_translation_length(self) -> None:
        """Test that the translation matches the torus dimension."""
        with pytest.raises(DimensionMismatch):
            SemiconjugacyMap(IntMatrix.identity(2), (Fraction(1, 2),))

    def test_push(self) -> None:
        """Test the pushed flow of the worked example."""
        result = push_flow(V, PHI)
        assert result.target_flow == PSI
        assert result.covering_degree == 5
        assert result.algebraic
        assert verify_semiconjugacy(V, PHI, PSI)
        assert not verify_semiconjugacy(V, PHI, PHI)
        assert not verify_semiconjugacy(V, PHI, PHI_SQRT3)

    def test_push_dimension(self) -> None:
        """Test that the map acts on the flow's torus."""
        with pytest.raises(DimensionMismatch):
            push_flow(SemiconjugacyMap(IntMatrix.identity(3)), PHI)

    def test_compose(self) -> None:
        """Test composition of affine maps."""
        first = SemiconjugacyMap(IntMatrix(((1, 1), (0, 1))), (Fraction(1, 2), 0))
        second = SemiconjugacyMap(V.matrix, (0, Fraction(1, 3)))
        composed = compose_maps(first, second)
        assert composed.matrix == IntMatrix(((4, 3), (1, 2)))
        assert composed.translation == (Fraction(5, 6), Fraction(1, 3))
        assert compose_maps(V, V).translation is None
        assert push_flow(composed, PHI).target_flow == push_flow(
            first, push_flow(second, PHI).target_flow
        ).target_flow

    @settings(deadline=None, max_examples=50, derandomize=True)
    @given(nonsingular_maps(), nonsingular_maps())
    def test_covering_degree_of_composition(
        self, first: SemiconjugacyMap, second: SemiconjugacyMap
    ) -> None:
        """Test that covering degrees multiply under composition."""
        composed = compose_maps(first, second)
        assert composed.covering_degree == first.covering_degree * second.covering_degree
        assert push_flow(composed, PHI).covering_degree == composed.covering_degree


class TestSymmetryTransport:
    """Tests for lifting and pushing symmetries."""

    def test_lift_worked_example(self) -> None:
        """Test that Q lifts to R^3."""
        lifted = lift_symmetry(V, PHI, symmetry_from_matrix(PSI, Q))
        assert lifted.matrix == IntMatrix(((2, 5), (5, 12)))
        assert lifted.matrix == R**3
        assert lifted.multiplier == sqrt2(7, 5)
        assert lifted.translation is None

    def test_lift_rejects_non_symmetry(self) -> None:
        """Test that only symmetries of the target are lifted."""
        with pytest.raises(NotASymmetry):
            lift_symmetry(V, PHI, Symmetry(IntMatrix(((1, 1), (0, 1))), sqrt2(1, 0)))

    def test_push_worked_example(self) -> None:
        """Test the minimal power of R that descends through V."""
        pushed = push_symmetry_power(V, PHI, symmetry_from_matrix(PHI, R))
        assert pushed.k == 3
        assert pushed.symmetry.matrix == Q
        assert pushed.symmetry.multiplier == sqrt2(7, 5)
        assert [str(c) for c in pushed.rejected] == [
            "[['-3/5', '14/5'], ['-1/5', '13/5']]",
            "[['-1/5', '28/5'], ['-2/5', '31/5']]",
        ]
        assert V.matrix @ R**3 == Q @ V.matrix

    def test_square_root_of_three(self) -> None:
        """Test the symmetry 2 + sqrt 3 pushed through [[2, 1], [0, 1]]."""
        r = IntMatrix(((2, 1), (3, 2)))
        pushed = push_symmetry_power(V_SQRT3, PHI_SQRT3, symmetry_from_matrix(PHI_SQRT3, r))
        assert pushed.k == 2
        assert pushed.rejected == (
            RatMatrix(((Fraction(7, 2), Fraction(1, 2)), (Fraction(3, 2), Fraction(1, 2)))),
        )
        assert pushed.symmetry.multiplier == SQRT3.element([7, 4])

    def test_non_normal_descent(self) -> None:
        """Test a matrix that is not normalized by the covering."""
        cover = SemiconjugacyMap(IntMatrix(((2, 0), (0, 1))))
        conjugated = cover.matrix @ IntMatrix(((1, 0), (1, 1))) @ inverse(cover.matrix)
        assert conjugated == RatMatrix(((1, 0), (Fraction(1, 2), 1)))

    def test_translations(self) -> None:
        """Test that translations are carried through lifting and pushing."""
        cover = SemiconjugacyMap(V.matrix, (Fraction(1, 5), 0))
        source = symmetry_from_matrix(PHI, R, (0, Fraction(1, 2)))
        pushed = push_symmetry_power(cover, PHI, source)
        c_v = cover.translation
        power_translation = (0, Fraction(1, 2))
        for _ in range(2):
            power_translation = tuple(
                a + b for a, b in zip(R.to_rational().apply(power_translation), (0, Fraction(1, 2)))
            )
        expected = tuple(
            a + b - c
            for a, b, c in zip(
                V.matrix.to_rational().apply(power_translation),
                c_v,
                Q.to_rational().apply(c_v),
            )
        )
        assert pushed.symmetry.translation == expected

        lifted = lift_symmetry(cover, PHI, pushed.symmetry)
        assert lifted.matrix == R**3
        assert lifted.translation == power_translation

    @settings(deadline=None, max_examples=40, derandomize=True)
    @given(
        nonsingular_maps(),
        st.sampled_from([sqrt2(1, 1), sqrt2(-1, 1), -sqrt2(1, 1), sqrt2(3, 2)]),
    )
    def test_lift_of_pushed_power(self, cover: SemiconjugacyMap, unit) -> None:  # type: ignore
        """Test that the pushed power lifts back to the same power of the source matrix."""
        source = matrix_from_multiplier(PHI, unit)
        pushed = push_symmetry_power(cover, PHI, symmetry_from_matrix(PHI, source))
        assert pushed.k >= 1
        lifted = lift_symmetry(cover, PHI, pushed.symmetry)
        assert lifted.matrix == source**pushed.k
        assert lifted.multiplier == unit**pushed.k
        assert cover.matrix @ source**pushed.k == pushed.symmetry.matrix @ cover.matrix


class TestSubgroupIndex:
    """Tests for indices of multiplier groups."""

    def test_rank1(self) -> None:
        """Test the index of the worked example."""
        source, target = multiplier_group(PHI), multiplier_group(PSI)
        assert subgroup_index_rank1(source, target) == 3
        assert subgroup_index(source, target) == 3
        with pytest.raises(NotASubgroup):
            subgroup_index_rank1(source, UnitGroup(source.order, (sqrt2(2, 1),), False))

    def test_ranks(self) -> None:
        """Test groups of different rank."""
        order = quadratic_maximal_order(SQRT2)
        trivial = UnitGroup(order, (), True)
        assert subgroup_index(trivial, trivial) == 1
        with pytest.raises(NotASubgroup):
            subgroup_index(unit_group_of_order(order), trivial)
        with pytest.raises(UnsupportedDegree):
            subgroup_index_rank1(trivial, trivial)


class TestTowerIdentity:
    """Tests for indices along chains of rank one subgroups."""

    @settings(deadline=None, max_examples=100, derandomize=True)
    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
    def test_chain(self, a: int, b: int) -> None:
        """Test [A : C] = [A : B][B : C] for A = <e>, B = <e^a>, C = <e^(ab)>."""
        order = quadratic_maximal_order(SQRT2)
        epsilon = sqrt2(1, 1)
        top = UnitGroup(order, (epsilon,), True)
        middle = UnitGroup(order, (epsilon**a,), False)
        bottom = UnitGroup(order, (epsilon ** (a * b),), False)
        assert subgroup_index(top, bottom) == subgroup_index(top, middle) * subgroup_index(
            middle, bottom
        )
        assert subgroup_index(top, bottom) == a * b


class TestPipeline:
    """Tests for the full pipeline."""

    def test_worked_example(self) -> None:
        """Test every quantity of the worked example."""
        report = full_pipeline(PHI, V)
        assert report.push.target_flow == PSI
        assert report.source_group.generators == (sqrt2(1, 1),)
        assert report.target_group.generators == (sqrt2(7, 5),)
        assert report.containment == ((sqrt2(7, 5), R**3),)
        assert report.index == 3
        assert report.power.exponents == (3,)
        assert report.power.index == 3
        assert report.power_index == 1
        assert report.unit_index == 1
        assert report.complete
        assert report.notes == ()

    def test_square_root_of_three(self) -> None:
        """Test the pipeline on Q(sqrt 3)."""
        report = full_pipeline(PHI_SQRT3, V_SQRT3)
        assert report.push.target_flow.omega == (SQRT3.element([2, 1]), SQRT3.generator)
        assert report.target_group.generators == (SQRT3.element([7, 4]),)
        assert report.index == 2
        assert report.power.exponents == (2,)

    @settings(deadline=None, max_examples=25, derandomize=True)
    @given(
        st.tuples(*(st.integers(min_value=-5, max_value=5) for _ in range(4))).filter(
            lambda t: t[0] * t[3] - t[1] * t[2] != 0
        )
    )
    def test_tower(self, entries: tuple) -> None:
        """Test the index relations for random coverings."""
        a, b, c, d = entries
        cover = SemiconjugacyMap(IntMatrix(((a, b), (c, d))))
        report = full_pipeline(PHI, cover)
        assert report.power.index == report.index * report.power_index
        generator = report.target_group.generators[0]
        assert generator == sqrt2(1, 1) ** report.index
        lifted = lift_symmetry(
            cover, PHI, symmetry_from_matrix(
                report.push.target_flow,
                matrix_from_multiplier(report.push.target_flow, generator),
            )
        )
        assert lifted.multiplier == generator

    @pytest.mark.parametrize(
        "matrix",
        [
            ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
            ((2, 0, 0), (0, 1, 0), (0, 0, 1)),
        ],
    )
    def test_cubic_without_target_candidates(self, matrix: tuple) -> None:
        """Test that target generators default to descending powers of the source units."""
        g = CUBE_ROOT2.generator
        flow = TorusFlowSpec(CUBE_ROOT2, (CUBE_ROOT2.one, g, g * g))
        report = full_pipeline(flow, SemiconjugacyMap(IntMatrix(matrix)), [g - 1])
        assert report.target_group.rank == 1
        assert report.index == report.power.index
        assert report.power_index == 1
        assert "target_generators_from_powers" in report.notes
        assert "requires_user_generators" in report.notes
        if matrix[0][0] == 1:
            assert report.index == 1
            assert report.target_group.generators == report.source_group.generators
