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
"""The worked example: the flow (1, 1 + sqrt 2) pushed along [[3, 1], [1, 2]]."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, List, Optional

from packages.valory.skills.torus_multipliers.utils.errors import (
    NotRealizable,
    TorusMultipliersError,
)
from packages.valory.skills.torus_multipliers.utils.lattice import (
    lattice_from_generators,
    multiplier_ring,
)
from packages.valory.skills.torus_multipliers.utils.linalg import IntMatrix
from packages.valory.skills.torus_multipliers.utils.number_field import DEFAULT_PRECISION
from packages.valory.skills.torus_multipliers.utils.scenario import load_scenario
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import (
    full_pipeline,
    lift_symmetry,
    push_symmetry_power,
)
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    frequency_lattice,
    frequency_ratio,
    matrix_from_multiplier,
    ratio_representation,
    symmetry_from_matrix,
)
from packages.valory.skills.torus_multipliers.utils.verify_sim import (
    check_semiconjugacy_orbits,
    check_symmetry_orbits,
)


EXAMPLE_SCENARIO = Path(__file__).parent.parent / "data" / "example1.json"


@dataclass(frozen=True)
class ExampleCheck:
    """An expected versus actual comparison."""

    name: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        """Check whether the values agree."""
        return self.expected == self.actual


def _check(name: str, expected: Any, compute: Callable[[], Any]) -> ExampleCheck:
    """Run a computation, recording engine errors as the actual value."""
    try:
        actual = compute()
    except TorusMultipliersError as e:
        actual = f"{type(e).__name__}: {e}"
    return ExampleCheck(name, str(expected), str(actual))


def _not_realizable(compute: Callable[[], Any]) -> str:
    """Report whether a computation is rejected as not realizable."""
    try:
        compute()
    except NotRealizable:
        return "NotRealizable"
    return "realizable"


def run_example_checks(
    simulate: bool = False,
    samples: int = 1000,
    tol: float = 1e-9,
    seed: int = 0,
    path: Optional[Path] = None,
    bits: int = DEFAULT_PRECISION,
) -> List[ExampleCheck]:
    """
    Recompute every quantity of the worked example.

    :param simulate: also run the floating point orbit checks.
    :param samples: the number of orbit samples.
    :param tol: the orbit tolerance.
    :param seed: the sampling seed.
    :param path: the scenario file.
    :param bits: the precision of the orbit check approximations.
    :return: the checks in a fixed order.
    """
    scenario = load_scenario(path or EXAMPLE_SCENARIO)
    field = scenario.build_field()
    phi = scenario.build_flow(field)
    v = scenario.build_map()
    r = symmetry_from_matrix(phi, scenario.affine("symmetry")[0])
    report = full_pipeline(phi, v)
    psi = report.push.target_flow
    power = push_symmetry_power(v, phi, r)
    q = power.symmetry
    sqrt2 = field.generator
    r_cubed = r.matrix**3

    checks = [
        _check("pushed frequencies", "(4, 1), (3, 2)", lambda: ", ".join(map(str, psi.omega))),
        _check("covering degree", 5, lambda: report.push.covering_degree),
        _check("source multiplier generator", "(1, 1)", lambda: report.source_group.generators[0]),
        _check("target multiplier generator", "(7, 5)", lambda: report.target_group.generators[0]),
        _check("multiplier index", 3, lambda: report.index),
        _check("minimal power k", 3, lambda: power.k),
        _check("pushed symmetry matrix", "[[-1, 14], [-1, 15]]", lambda: q.matrix),
        _check(
            "rejected powers C_1, C_2",
            "[['-3/5', '14/5'], ['-1/5', '13/5']] [['-1/5', '28/5'], ['-2/5', '31/5']]",
            lambda: " ".join(str(c) for c in power.rejected),
        ),
        _check("V R^3 = Q V", True, lambda: v.matrix @ r_cubed == q.matrix @ v.matrix),
        _check(
            "lifted symmetry",
            "[[2, 5], [5, 12]]",
            lambda: lift_symmetry(v, phi, q).matrix,
        ),
        _check(
            "1 + sqrt 2 on the target",
            "NotRealizable",
            lambda: _not_realizable(lambda: matrix_from_multiplier(psi, 1 + sqrt2)),
        ),
        _check(
            "(1 + sqrt 2)^2 on the target",
            "NotRealizable",
            lambda: _not_realizable(lambda: matrix_from_multiplier(psi, (1 + sqrt2) ** 2)),
        ),
        _check(
            "ratio representation of 7 + 5 sqrt 2",
            (-1, 15),
            lambda: ratio_representation(psi, q.multiplier),
        ),
        _check(
            "target multiplier ring",
            "span{(1, 0), (0, 5)}",
            lambda: multiplier_ring(frequency_lattice(psi)),
        ),
        _check(
            "target multiplier ring equals Z + 5 sqrt 2 Z",
            True,
            lambda: multiplier_ring(frequency_lattice(psi)).lattice
            == lattice_from_generators(field, [field.one, 5 * sqrt2]),
        ),
        _check(
            "minimal polynomial of the target frequency ratio",
            "['1/14', '-8/7', '1']",
            lambda: [str(c) for c in frequency_ratio(psi, 1, 0)[1]],
        ),
        _check("unit index of the source", 1, lambda: report.unit_index),
        _check("power subgroup index", 3, lambda: report.power.index),
        _check("source symmetry matrix", IntMatrix(((0, 1), (1, 2))), lambda: r.matrix),
    ]

    if simulate:
        semiconjugacy = check_semiconjugacy_orbits(
            v, phi, psi, samples, tol=tol, seed=seed, bits=bits
        )
        symmetry = check_symmetry_orbits(r, phi, samples, tol=tol, seed=seed, bits=bits)
        checks.append(_check("semiconjugacy orbit residual", True, lambda: semiconjugacy.passed))
        checks.append(_check("symmetry orbit residual", True, lambda: symmetry.passed))
    return checks
