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
"""Lossless JSON encodings of exact results."""

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from packages.valory.skills.torus_multipliers.utils.lattice import Lattice, Order, UnitGroup
from packages.valory.skills.torus_multipliers.utils.linalg import IntMatrix, RatMatrix
from packages.valory.skills.torus_multipliers.utils.number_field import (
    FieldElement,
    NumberField,
)
from packages.valory.skills.torus_multipliers.utils.semiconjugacy import (
    PipelineReport,
    PowerPush,
    PushResult,
)
from packages.valory.skills.torus_multipliers.utils.torus_flow import (
    Symmetry,
    TorusFlowSpec,
)
from packages.valory.skills.torus_multipliers.utils.verify_sim import OrbitCheck


Json = Union[str, int, bool, List[Any], Dict[str, Any], None]


def rational(value: Union[int, Fraction]) -> str:
    """Encode a rational as "p/q", or "p" when q = 1."""
    return str(Fraction(value))


def parse_rational(value: Union[str, int]) -> Fraction:
    """Decode a rational string."""
    return Fraction(str(value).strip())


def element(value: FieldElement) -> List[str]:
    """Encode a field element as its coordinate strings."""
    return [rational(c) for c in value.coords]


def matrix(value: Union[IntMatrix, RatMatrix]) -> List[List[str]]:
    """Encode a matrix as row-major entry strings."""
    return [[rational(entry) for entry in row] for row in value.rows]


def vector(value: Optional[Sequence[Fraction]]) -> Optional[List[str]]:
    """Encode an optional rational vector."""
    return None if value is None else [rational(c) for c in value]


def field(value: NumberField) -> Dict[str, Json]:
    """Encode a number field with its root interval and irreducibility evidence."""
    return {
        "poly": [rational(c) for c in value.poly],
        "root_interval": [rational(value.root_interval[0]), rational(value.root_interval[1])],
        "certificate_prime": value.certificate,
        "asserted_irreducible": value.asserted_irreducible,
    }


def flow(value: TorusFlowSpec) -> Dict[str, Json]:
    """Encode a flow."""
    return {
        "omega": [element(w) for w in value.omega],
        "scale": None if value.scale is None else rational(value.scale),
    }


def lattice(value: Lattice) -> List[List[str]]:
    """Encode a lattice by its canonical basis."""
    return [element(b) for b in value.basis]


def order(value: Order) -> Dict[str, Json]:
    """Encode an order."""
    return {"basis": lattice(value.lattice)}


def unit_group(value: UnitGroup) -> Dict[str, Json]:
    """Encode a unit group with its completeness flag."""
    return {
        "order": order(value.order),
        "rank": value.rank,
        "generators": [element(g) for g in value.generators],
        "torsion": [str(t) for t in value.torsion],
        "completeness": "complete" if value.complete else "verified_only",
    }


def symmetry(value: Symmetry) -> Dict[str, Json]:
    """Encode a symmetry."""
    return {
        "matrix": matrix(value.matrix),
        "multiplier": element(value.multiplier),
        "translation": vector(value.translation),
    }


def push_result(value: PushResult) -> Dict[str, Json]:
    """Encode a pushed flow."""
    return {
        "target": flow(value.target_flow),
        "covering_degree": value.covering_degree,
        "algebraic": value.algebraic,
    }


def power_push(value: PowerPush) -> Dict[str, Json]:
    """Encode a pushed symmetry power with the rejected lower powers."""
    return {
        "k": value.k,
        "symmetry": symmetry(value.symmetry),
        "rejected": [matrix(c) for c in value.rejected],
    }


def orbit_check(value: OrbitCheck) -> Dict[str, Json]:
    """Encode an orbit check; floats are rendered as repr strings."""
    return {
        "residual": repr(value.residual),
        "tolerance": repr(value.tolerance),
        "passed": value.passed,
        "worst_point": [repr(x) for x in value.worst_point],
        "worst_time": repr(value.worst_time),
    }


def pipeline_report(value: PipelineReport) -> Dict[str, Json]:
    """Encode a full pipeline report."""
    return {
        "source": flow(value.source),
        "push": push_result(value.push),
        "multipliers_source": unit_group(value.source_group),
        "multipliers_target": unit_group(value.target_group),
        "containment": [
            {"multiplier": element(generator), "source_matrix": matrix(m)}
            for generator, m in value.containment
        ],
        "index": value.index,
        "power_subgroup": {
            "exponents": list(value.power.exponents),
            "generators": [element(g) for g in value.power.group.generators],
            "index_in_source": value.power.index,
            "index_in_target": value.power_index,
        },
        "unit_index_in_maximal": value.unit_index,
        "complete": value.complete,
        "notes": list(value.notes),
    }


def dumps(report: Json) -> str:
    """Render a report as canonical JSON."""
    return json.dumps(report, sort_keys=True, indent=2)
