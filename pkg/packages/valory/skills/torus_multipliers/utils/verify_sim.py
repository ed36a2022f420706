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
"""Floating point orbit checks that cross-validate the exact engine."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.number_field import (
    DEFAULT_PRECISION,
    approximate,
)
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import SemiconjugacyMap
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    Symmetry,
    TorusFlowSpec,
)


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.verify_sim"
)

DEFAULT_TIMES = (-10.0, 10.0)
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NumericFlow:
    """A translation flow on T^n with floating point frequencies."""

    omega: np.ndarray

    @classmethod
    def from_flow(
        cls, flow: TorusFlowSpec, bits: int = DEFAULT_PRECISION
    ) -> "NumericFlow":
        """Approximate the frequencies of an exact flow."""
        omega = np.array([approximate(w, bits) for w in flow.omega])
        if not np.all(np.isfinite(omega)):
            raise ValueError(f"non-finite frequencies {omega}")
        return cls(omega)

    @property
    def n(self) -> int:
        """Get the dimension."""
        return len(self.omega)


@dataclass(frozen=True)
class OrbitCheck:
    """The worst residual of an orbit relation over the samples."""

    residual: float
    tolerance: float
    worst_point: Tuple[float, ...]
    worst_time: float

    @property
    def passed(self) -> bool:
        """Check the residual against the tolerance."""
        return self.residual < self.tolerance


def flow_at(flow: NumericFlow, t: float, x0: np.ndarray) -> np.ndarray:
    """Get (x0 + t omega) mod 1."""
    return np.mod(np.asarray(x0, dtype=float) + t * flow.omega, 1.0)


def torus_dist(a: np.ndarray, b: np.ndarray) -> float:
    """Get the max over coordinates of the distance on the circle R/Z."""
    difference = np.mod(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), 1.0)
    return float(np.max(np.minimum(difference, 1.0 - difference)))


def _torus_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Get torus distances row by row."""
    difference = np.mod(np.abs(a - b), 1.0)
    return np.max(np.minimum(difference, 1.0 - difference), axis=1)


def _affine(matrix: np.ndarray, translation: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Apply x -> B x + c mod 1 to rows of points."""
    return np.mod(points @ matrix.T + translation, 1.0)


def _samples(
    n: int, samples: int, times: Tuple[float, float], seed: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Draw seeded start points and times."""
    rng = np.random.default_rng(seed)
    return rng.random((samples, n)), rng.uniform(times[0], times[1], samples)


def _map_arrays(matrix_rows: Tuple, translation: Optional[Tuple]) -> Tuple[np.ndarray, np.ndarray]:
    """Convert an exact affine map to floating point arrays."""
    matrix = np.array(matrix_rows, dtype=float)
    if translation is None:
        return matrix, np.zeros(len(matrix_rows))
    return matrix, np.array([float(c) for c in translation])


def _check(
    residuals: np.ndarray, points: np.ndarray, times: np.ndarray, tol: float
) -> OrbitCheck:
    """Summarize the residuals."""
    worst = int(np.argmax(residuals))
    return OrbitCheck(
        float(residuals[worst]), tol, tuple(float(x) for x in points[worst]), float(times[worst])
    )


def check_semiconjugacy_orbits(
    semiconjugacy: SemiconjugacyMap,
    source: TorusFlowSpec,
    target: TorusFlowSpec,
    samples: int = 1000,
    times: Tuple[float, float] = DEFAULT_TIMES,
    tol: float = DEFAULT_TOLERANCE,
    seed: int = 0,
    bits: int = DEFAULT_PRECISION,
) -> OrbitCheck:
    """
    Compare V(phi_t(x)) with psi_t(V(x)) on seeded samples.

    :param semiconjugacy: the map V.
    :param source: the flow phi.
    :param target: the flow psi.
    :param samples: the number of sampled (x, t) pairs.
    :param times: the range of t.
    :param tol: the tolerance.
    :param seed: the random seed.
    :param bits: the precision of the frequency approximations.
    :return: the orbit check.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    phi, psi = NumericFlow.from_flow(source, bits), NumericFlow.from_flow(target, bits)
    matrix, translation = _map_arrays(semiconjugacy.matrix.rows, semiconjugacy.translation)
    points, ts = _samples(phi.n, samples, times, seed)
    lhs = _affine(matrix, translation, np.mod(points + np.outer(ts, phi.omega), 1.0))
    rhs = np.mod(_affine(matrix, translation, points) + np.outer(ts, psi.omega), 1.0)
    check = _check(_torus_dists(lhs, rhs), points, ts, tol)
    _logger.debug(f"Semiconjugacy orbit residual {check.residual} over {samples} samples")
    return check


def check_symmetry_orbits(
    symmetry: Symmetry,
    flow: TorusFlowSpec,
    samples: int = 1000,
    times: Tuple[float, float] = DEFAULT_TIMES,
    tol: float = DEFAULT_TOLERANCE,
    seed: int = 0,
    multiplier: Optional[float] = None,
    bits: int = DEFAULT_PRECISION,
) -> OrbitCheck:
    """
    Compare R(phi_t(x)) with phi_(alpha t)(R(x)) on seeded samples.

    :param symmetry: the symmetry R.
    :param flow: the flow phi.
    :param samples: the number of sampled (x, t) pairs.
    :param times: the range of t.
    :param tol: the tolerance.
    :param seed: the random seed.
    :param multiplier: an override for alpha.
    :param bits: the precision of the frequency and multiplier approximations.
    :return: the orbit check.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    phi = NumericFlow.from_flow(flow, bits)
    alpha = approximate(symmetry.multiplier, bits) if multiplier is None else multiplier
    matrix, translation = _map_arrays(symmetry.matrix.rows, symmetry.translation)
    points, ts = _samples(phi.n, samples, times, seed)
    lhs = _affine(matrix, translation, np.mod(points + np.outer(ts, phi.omega), 1.0))
    rhs = np.mod(_affine(matrix, translation, points) + np.outer(alpha * ts, phi.omega), 1.0)
    return _check(_torus_dists(lhs, rhs), points, ts, tol)
