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
"""Lattices in number fields, their multiplier rings and the unit groups of orders."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm, prod
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from aea.exceptions import enforce
from sympy import factorint

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.errors import (
    NotAUnit,
    NotASublattice,
    NotFullRank,
    NotInGroup,
    SingularMatrix,
    UnsupportedDegree,
)
from packages.valory.skills.torus_multipliers.utils.linalg import (
    IntMatrix,
    RatMatrix,
    det,
    hnf_of_columns,
    inverse,
)
from packages.valory.skills.torus_multipliers.utils.number_field import (
    FieldElement,
    NumberField,
    embed_real_cmp,
)


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.lattice"
)

CONTINUED_FRACTION_CAP = 10**6
LOG_PRECISIONS = (64, 128, 256, 512)
LOG_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Lattice:
    """A full-rank Z-module (1/d) H Z^n of power basis coordinates, H in Hermite normal form."""

    field: NumberField
    matrix: IntMatrix
    denominator: int

    @property
    def basis_matrix(self) -> RatMatrix:
        """Get the basis as rational coordinate columns."""
        return self.matrix.to_rational().scaled(Fraction(1, self.denominator))

    @property
    def basis(self) -> List[FieldElement]:
        """Get the canonical basis."""
        matrix = self.basis_matrix
        return [self.field.element(matrix.column(j)) for j in range(matrix.n)]

    def coordinates(self, x: FieldElement) -> List[Fraction]:
        """Get the rational coordinates of an element in the lattice basis."""
        return inverse(self.basis_matrix).apply(x.coords)

    @property
    def covolume(self) -> Fraction:
        """Get |det| of the basis, the index of Z[g] relative to the lattice."""
        return abs(det(self.basis_matrix))

    def __str__(self) -> str:
        """Get the basis as coordinate vectors."""
        return "span{" + ", ".join(str(b) for b in self.basis) + "}"


def lattice_from_columns(field: NumberField, columns: Sequence[Sequence[Fraction]]) -> Lattice:
    """
    Canonicalize the lattice spanned by rational coordinate vectors.

    :param field: the number field.
    :param columns: power basis coordinate vectors of the generators.
    :return: the lattice in Hermite normal form with the gcd of H and d removed.
    """
    columns = [tuple(Fraction(c) for c in column) for column in columns]
    denominator = lcm(*(c.denominator for column in columns for c in column))
    integral = [[int(c * denominator) for c in column] for column in columns]
    try:
        matrix = hnf_of_columns(integral, field.degree)
    except SingularMatrix as e:
        raise NotFullRank(f"generators do not span the field: {e}") from e
    common = reduce(gcd, (entry for row in matrix.rows for entry in row), denominator)
    matrix = IntMatrix(tuple(tuple(entry // common for entry in row) for row in matrix.rows))
    return Lattice(field, matrix, denominator // common)


def lattice_from_generators(field: NumberField, gens: Sequence[FieldElement]) -> Lattice:
    """Get the canonical lattice spanned by field elements."""
    return lattice_from_columns(field, [g.coords for g in gens])


def lattice_contains(lattice: Lattice, x: FieldElement) -> bool:
    """Check exactly whether an element lies in the lattice."""
    return all(c.denominator == 1 for c in lattice.coordinates(x))


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """
    Get the index of a sublattice.

    :param sub: the sublattice.
    :param sup: the containing lattice.
    :return: |det| of the sub basis written in the sup basis.
    """
    columns = [sup.coordinates(b) for b in sub.basis]
    if any(c.denominator != 1 for column in columns for c in column):
        raise NotASublattice(f"{sub} is not contained in {sup}")
    return abs(int(det(RatMatrix(tuple(zip(*columns))))))


def lattice_scale(lattice: Lattice, alpha: FieldElement) -> Lattice:
    """Get the lattice alpha * L."""
    return lattice_from_generators(lattice.field, [alpha * b for b in lattice.basis])


def _dual(lattice: Lattice) -> RatMatrix:
    """Get the coordinate dual basis (B^-1)^T."""
    return inverse(lattice.basis_matrix).transpose()


def lattice_intersection(lattices: Sequence[Lattice]) -> Lattice:
    """
    Intersect full-rank lattices of a field.

    The dual of an intersection is the sum of the duals, and sums are Hermite
    normal forms of the concatenated generators.

    :param lattices: the lattices.
    :return: their intersection.
    """
    field = lattices[0].field
    duals = [_dual(lattice) for lattice in lattices]
    dual_sum = lattice_from_columns(field, [d.column(j) for d in duals for j in range(d.n)])
    return lattice_from_columns(
        field, [_dual(dual_sum).column(j) for j in range(field.degree)]
    )


@dataclass(frozen=True)
class Order:
    """A subring of a number field that is a full-rank lattice containing 1."""

    lattice: Lattice

    def __post_init__(self) -> None:
        """Check the ring axioms exactly."""
        basis = self.lattice.basis
        enforce(lattice_contains(self.lattice, self.field.one), f"{self.lattice} misses 1")
        enforce(
            all(lattice_contains(self.lattice, a * b) for a in basis for b in basis),
            f"{self.lattice} is not closed under multiplication",
        )

    @property
    def field(self) -> NumberField:
        """Get the field."""
        return self.lattice.field

    @property
    def basis(self) -> List[FieldElement]:
        """Get the canonical basis."""
        return self.lattice.basis

    def contains(self, x: FieldElement) -> bool:
        """Check membership."""
        return lattice_contains(self.lattice, x)

    def is_unit(self, u: FieldElement) -> bool:
        """Check whether u and its inverse both lie in the order."""
        return not u.is_zero and self.contains(u) and self.contains(u ** -1)

    def __str__(self) -> str:
        """Get the basis as coordinate vectors."""
        return str(self.lattice)


def multiplier_ring(lattice: Lattice) -> Order:
    """
    Get the multiplier ring {a : a L in L} of a lattice.

    a L lies in L exactly when a b_i lies in L for each basis element, so the
    ring is the intersection of the lattices b_i^-1 L.

    :param lattice: the lattice.
    :return: the order.
    """
    scaled = [lattice_scale(lattice, b ** -1) for b in lattice.basis]
    ring = Order(lattice_intersection(scaled))
    _logger.debug(f"Multiplier ring of {lattice} is {ring}")
    return ring


@dataclass(frozen=True)
class QuadraticData:
    """The discriminant data of a real quadratic field Q(sqrt d), d squarefree."""

    d: int
    square: int
    root: FieldElement

    @property
    def omega(self) -> FieldElement:
        """Get the second basis element of the maximal order."""
        if self.d % 4 == 1:
            return (self.root + 1) / 2
        return self.root

    @property
    def omega_parts(self) -> Tuple[int, int]:
        """Get (P, Q) with omega = (P + sqrt d) / Q."""
        return (1, 2) if self.d % 4 == 1 else (0, 1)


def quadratic_data(field: NumberField) -> QuadraticData:
    """
    Find sqrt d inside a quadratic field.

    With z^2 + a1 z + a0 the defining polynomial, (2g + a1)^2 equals the
    discriminant a1^2 - 4 a0 = s^2 d with d squarefree.

    :param field: a quadratic field.
    :return: d, s and the element sqrt d, positive under the embedding.
    """
    if field.degree != 2:
        raise UnsupportedDegree(f"expected a quadratic field, got degree {field.degree}")
    a0, a1, _ = field.poly
    discriminant = a1 * a1 - 4 * a0
    square = prod(p ** (e // 2) for p, e in factorint(discriminant).items())
    d = discriminant // (square * square)
    root = (2 * field.generator + a1) / square
    if embed_real_cmp(root, field.zero) < 0:
        root = -root
    return QuadraticData(d, square, root)


def quadratic_maximal_order(field: NumberField) -> Order:
    """Get the ring of integers Z[w] of a quadratic field, w = sqrt d or (1 + sqrt d)/2."""
    data = quadratic_data(field)
    return Order(lattice_from_generators(field, [field.one, data.omega]))


def _continued_fraction_unit(data: QuadraticData, cap: int) -> FieldElement:
    """
    Get the fundamental unit of the maximal order from a periodic continued fraction.

    The reduced number x = w + m (x > 1, -1 < conj(x) < 0) has a purely periodic
    expansion; with period l and convergent denominators q, the fundamental unit
    is q_(l-1) x + q_(l-2).

    :param data: the quadratic data.
    :param cap: the maximal number of expansion steps.
    :return: the fundamental unit, greater than 1.
    """
    D, s = data.d, isqrt(data.d)
    P_w, Q = data.omega_parts
    m = -((P_w - s - 1) // Q) - 1
    P = P_w + m * Q
    start = (P, Q)
    q_prev, q_curr = 1, 0
    for step in range(1, cap + 1):
        a = (P + s) // Q
        q_prev, q_curr = q_curr, a * q_curr + q_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == start:
            _logger.debug(f"Continued fraction of Q(sqrt {D}) has period {step}")
            xi = (data.root + start[0]) / start[1]
            return q_curr * xi + q_prev
    raise UnsupportedDegree(f"continued fraction period of sqrt {D} exceeds {cap}")


def fundamental_unit_real_quadratic(
    order: Order, cap: int = CONTINUED_FRACTION_CAP
) -> FieldElement:
    """
    Get the fundamental unit of an order in a real quadratic field.

    :param order: the order.
    :param cap: the continued fraction step cap.
    :return: the generator greater than 1 of the units modulo {+1, -1}.
    """
    field = order.field
    data = quadratic_data(field)
    maximal = quadratic_maximal_order(field)
    conductor = lattice_index(order.lattice, maximal.lattice)
    epsilon = _continued_fraction_unit(data, cap)
    power = epsilon
    # the unit index divides the order of (O_K / f O_K)* / (Z / f Z)*
    for exponent in range(1, conductor * conductor + 2):
        if order.contains(power):
            _logger.debug(f"Fundamental unit of {order} is {epsilon}^{exponent}")
            return power
        power = power * epsilon
    enforce(False, f"no power of {epsilon} lies in {order}")
    raise AssertionError  # pragma: nocover


def _height_bits(u: FieldElement) -> int:
    """Get the bit size of the largest coordinate numerator or denominator."""
    return max(max(c.numerator.bit_length(), c.denominator.bit_length()) for c in u.coords)


def _real_log(u: FieldElement, bits: int) -> mpmath.mpf:
    """Get log|u| under the selected embedding."""
    with mpmath.workprec(bits):
        return mpmath.log(abs(u.field.embedding(bits).evaluate(u, bits)))


def discrete_log_rank1(u: FieldElement, epsilon: FieldElement) -> Tuple[int, int]:
    """
    Write a unit as s * epsilon^k.

    The exponent is estimated on whichever of |u| and |u|^-1 is at least 1,
    with a working precision that grows with the coordinate height, and is
    then verified exactly.

    :param u: the unit.
    :param epsilon: a unit greater than 1.
    :return: the sign s and the exponent k.
    """
    if u.is_zero:
        raise NotInGroup("zero is not a unit")
    field = u.field
    if epsilon in (field.one, -field.one):
        raise NotInGroup("the generator must not be torsion")
    magnitude = u if embed_real_cmp(u, field.zero) > 0 else -u
    inverted = embed_real_cmp(magnitude, field.one) < 0
    if inverted:
        magnitude = magnitude**-1
    height = _height_bits(magnitude) + _height_bits(epsilon)

    tried = set()
    for base in LOG_PRECISIONS:
        bits = base + height
        with mpmath.workprec(bits):
            ratio = _real_log(magnitude, bits) / _real_log(epsilon, bits)
            if not mpmath.isfinite(ratio):
                _logger.debug(f"Non-finite logarithm ratio at {bits} bits")
                continue
            k = int(mpmath.nint(ratio))
        if inverted:
            k = -k
        if k in tried:
            continue
        tried.add(k)
        power = epsilon**k
        if u == power:
            return 1, k
        if u == -power:
            return -1, k
        _logger.debug(f"Exponent estimate {k} at {bits} bits does not verify")
    raise NotInGroup(f"{u} is not a signed power of {epsilon}")


def log_embedding(u: FieldElement) -> np.ndarray:
    """
    Get the logarithmic embedding of a nonzero element.

    One coordinate per real root and per pair of complex conjugate roots of
    the defining polynomial, the latter doubled.

    :param u: the element.
    :return: the vector of log |sigma(u)|.
    """
    roots = np.polynomial.polynomial.polyroots([float(c) for c in u.field.poly])
    coords = [float(c) for c in u.coords]
    logs = []
    for root in roots:
        if root.imag < -1e-12:
            continue
        value = abs(np.polynomial.polynomial.polyval(root, coords))
        logs.append((1.0 if abs(root.imag) <= 1e-12 else 2.0) * np.log(value))
    return np.array(logs)


def discrete_log(
    u: FieldElement, generators: Sequence[FieldElement]
) -> Tuple[int, List[int]]:
    """
    Write a unit as s * prod g_i^(k_i).

    The exponents solve the logarithmic embedding system in the least squares
    sense and are verified by exact multiplication.

    :param u: the unit.
    :param generators: multiplicatively independent units.
    :return: the sign s and the exponent vector.
    """
    if u.is_zero:
        raise NotInGroup("zero is not a unit")
    if len(generators) == 1:
        sign, exponent = discrete_log_rank1(u, generators[0])
        return sign, [exponent]
    if not generators:
        exponents: List[int] = []
    else:
        try:
            system = np.column_stack([log_embedding(g) for g in generators])
            target = log_embedding(u)
        except OverflowError as e:
            raise NotInGroup(f"coordinates of {u} exceed float range") from e
        if not (np.all(np.isfinite(system)) and np.all(np.isfinite(target))):
            raise NotInGroup(f"{u} has a non-finite logarithmic embedding")
        solution, *_ = np.linalg.lstsq(system, target, rcond=None)
        if np.max(np.abs(solution - np.rint(solution))) > LOG_TOLERANCE:
            raise NotInGroup(f"{u} is not a power product of the generators")
        exponents = [int(k) for k in np.rint(solution)]
    product = u.field.one
    for g, k in zip(generators, exponents):
        product = product * g**k
    if u == product:
        return 1, exponents
    if u == -product:
        return -1, exponents
    raise NotInGroup(f"{u} is not a signed power product of the generators")


@dataclass(frozen=True)
class UnitGroup:
    """The units {+1, -1} x <generators> of an order."""

    order: Order
    generators: Tuple[FieldElement, ...]
    complete: bool

    @property
    def rank(self) -> int:
        """Get the number of free generators."""
        return len(self.generators)

    @property
    def torsion(self) -> Tuple[int, int]:
        """Get the torsion subgroup of a real field."""
        return 1, -1

    def contains(self, u: FieldElement) -> bool:
        """Check whether a unit lies in the group."""
        try:
            discrete_log(u, self.generators)
        except NotInGroup:
            return False
        return True


def _normalize_unit(u: FieldElement) -> FieldElement:
    """Get the representative of {u, -u, 1/u, -1/u} that is greater than 1."""
    zero, one = u.field.zero, u.field.one
    if embed_real_cmp(u, zero) < 0:
        u = -u
    if embed_real_cmp(u, one) < 0:
        u = u**-1
    return u


def unit_group_of_order(
    order: Order,
    candidates: Optional[Sequence[FieldElement]] = None,
    cap: int = CONTINUED_FRACTION_CAP,
) -> UnitGroup:
    """
    Get the unit group of an order.

    Quadratic orders are solved completely. For higher degree the candidate
    generators are only verified to be independent units of the order.

    :param order: the order.
    :param candidates: unit generators to verify for degree >= 3.
    :param cap: the continued fraction step cap.
    :return: the unit group.
    """
    degree = order.field.degree
    if degree == 1:
        return UnitGroup(order, (), True)
    if degree == 2:
        return UnitGroup(order, (fundamental_unit_real_quadratic(order, cap),), True)

    generators = []
    for candidate in candidates or ():
        if not order.is_unit(candidate):
            raise NotAUnit(f"{candidate} is not a unit of {order}")
        generators.append(_normalize_unit(candidate))
    if generators:
        logs = np.column_stack([log_embedding(g) for g in generators])
        if np.linalg.matrix_rank(logs, tol=LOG_TOLERANCE) < len(generators):
            raise NotAUnit("candidate units are multiplicatively dependent")
    _logger.warning(
        f"Unit group of a degree {degree} order is verified only: rank {len(generators)}"
    )
    return UnitGroup(order, tuple(generators), False)

