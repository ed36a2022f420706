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
"""Tests for the floating point orbit checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packages.valory.skills.torus_multipliers.tests.constants import PHI, PSI, Q, R, V
from packages.valory.skills.torus_multipliers.utils.linalg import IntMatrix
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import SemiconjugacyMap
from packages.valory.skills.torus_multipliers.utils.torus_flow import symmetry_from_matrix
from packages.valory.skills.torus_multipliers.utils.verify_sim import (
    NumericFlow,
    check_semiconjugacy_orbits,
    check_symmetry_orbits,
    flow_at,
    torus_dist,
)


class TestPrimitives:
    """Tests for numeric flows and distances."""

    def test_torus_dist(self) -> None:
        """Test that distances wrap around the circle."""
        assert torus_dist(np.array([0.05, 0.5]), np.array([0.95, 0.5])) == pytest.approx(0.1)
        assert torus_dist(np.array([0.2]), np.array([0.2])) == 0.0

    def test_flow_at(self) -> None:
        """Test that orbits are reduced modulo 1."""
        flow = NumericFlow.from_flow(PHI)
        assert flow.n == 2
        point = flow_at(flow, 2.0, np.zeros(2))
        assert point[0] == pytest.approx(0.0)
        assert point[1] == pytest.approx(2 * (1 + np.sqrt(2)) % 1.0)


class TestOrbitChecks:
    """Tests that the exact results survive numerical simulation."""

    def test_semiconjugacy(self) -> None:
        """Test the worked example semiconjugacy."""
        check = check_semiconjugacy_orbits(V, PHI, PSI, samples=500, seed=3)
        assert check.passed
        assert check.residual < 1e-9
        assert len(check.worst_point) == 2

    def test_wrong_target(self) -> None:
        """Test that a flow that is not the push forward is detected."""
        check = check_semiconjugacy_orbits(V, PHI, PHI, samples=200)
        assert not check.passed

    def test_symmetries(self) -> None:
        """Test both symmetries of the worked example."""
        assert check_symmetry_orbits(symmetry_from_matrix(PHI, R), PHI).passed
        assert check_symmetry_orbits(symmetry_from_matrix(PSI, Q), PSI, times=(-1.0, 1.0)).passed

    def test_wrong_multiplier(self) -> None:
        """Test that a wrong time change is detected."""
        check = check_symmetry_orbits(symmetry_from_matrix(PHI, R), PHI, samples=200, multiplier=2.0)
        assert not check.passed

    def test_seeded(self) -> None:
        """Test that the same seed gives the same sample."""
        first = check_semiconjugacy_orbits(V, PHI, PHI, samples=50, seed=7)
        second = check_semiconjugacy_orbits(V, PHI, PHI, samples=50, seed=7)
        assert first == second

    def test_tolerance(self) -> None:
        """Test that tolerances must be positive."""
        with pytest.raises(ValueError):
            check_semiconjugacy_orbits(V, PHI, PSI, tol=0.0)
        with pytest.raises(ValueError):
            check_symmetry_orbits(symmetry_from_matrix(PHI, R), PHI, tol=-1.0)

    def test_corrupted_map(self) -> None:
        """Test that a perturbed covering leaves a visible residual."""
        corrupted = SemiconjugacyMap(IntMatrix(((3, 1), (1, 3))))
        check = check_semiconjugacy_orbits(corrupted, PHI, PSI, samples=200, seed=1)
        assert not check.passed
        assert check.residual > 1e-3

    def test_wrong_target_at_default_samples(self) -> None:
        """Test that an exactly wrong target fails on the default seeded sample."""
        check = check_semiconjugacy_orbits(V, PHI, PHI, seed=11)
        assert check.residual > 1e-3
        exact = check_semiconjugacy_orbits(V, PHI, PSI, seed=11)
        assert exact.residual < 1e-9

    def test_precision(self) -> None:
        """Test that the approximation precision reaches the orbit checks."""
        coarse = NumericFlow.from_flow(PHI, 16)
        fine = NumericFlow.from_flow(PHI, 256)
        assert np.max(np.abs(coarse.omega - fine.omega)) < 2.0**-16
        assert check_semiconjugacy_orbits(V, PHI, PSI, samples=100, bits=16).passed
        assert check_symmetry_orbits(
            symmetry_from_matrix(PHI, R), PHI, samples=100, bits=128
        ).passed


points = st.lists(
    st.floats(min_value=0.0, max_value=1.0, exclude_max=True), min_size=2, max_size=2
).map(np.array)


class TestOrbitGeometry:
    """Tests for the group structure of the numeric flows."""

    @settings(deadline=None, max_examples=100, derandomize=True)
    @given(
        points,
        st.floats(min_value=-10.0, max_value=10.0),
        st.floats(min_value=-10.0, max_value=10.0),
    )
    def test_flow_property(self, x0: np.ndarray, t: float, s: float) -> None:
        """Test that flowing for s then for t is flowing for t + s."""
        flow = NumericFlow.from_flow(PSI)
        assert torus_dist(flow_at(flow, t + s, x0), flow_at(flow, t, flow_at(flow, s, x0))) < 1e-9

    @settings(deadline=None, max_examples=100, derandomize=True)
    @given(points, points, points)
    def test_triangle_inequality(self, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> None:
        """Test that the circle distance is a metric."""
        assert torus_dist(a, c) <= torus_dist(a, b) + torus_dist(b, c) + 1e-12
        assert torus_dist(a, b) == pytest.approx(torus_dist(b, a))
        assert 0.0 <= torus_dist(a, b) <= 0.5
