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
"""Exact arithmetic in real algebraic number fields presented by a power basis."""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import cached_property
from typing import Any, List, Optional, Sequence, Tuple, Union

import mpmath
from sympy import Poly, Rational as SympyRational, Symbol
from sympy.ntheory import primerange
from sympy.polys.domains import QQ, ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sub

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.errors import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    ReduciblePolynomial,
)
from packages.valory.skills.torus_multipliers.utils.linalg import RatMatrix, from_domain


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.number_field"
)

Z = Symbol("z")
CERTIFICATE_PRIME_BOUND = 100
DEFAULT_PRECISION = 64
GUARD_BITS = 32

Scalar = Union[int, Fraction]


def _to_sympy(value: Fraction) -> SympyRational:
    """Convert a fraction to a sympy rational."""
    value = Fraction(value)
    return SympyRational(value.numerator, value.denominator)


def _from_sympy(value: Any) -> Fraction:
    """Convert a sympy rational to a fraction."""
    return Fraction(int(value.p), int(value.q))


def _mpf(value: Fraction) -> mpmath.mpf:
    """Convert a fraction to a multiprecision float at the current precision."""
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def polynomial(coefficients: Sequence[Scalar]) -> Poly:
    """Build a sympy polynomial over QQ from coefficients given constant term first."""
    return Poly([_to_sympy(c) for c in reversed(coefficients)], Z, domain=QQ)


def coefficients(poly: Poly, length: Optional[int] = None) -> List[Fraction]:
    """Get the coefficients of a polynomial, constant term first, padded to a length."""
    values = [_from_sympy(c) for c in reversed(poly.all_coeffs())]
    if poly.is_zero:
        values = []
    if length is not None:
        values += [Fraction(0)] * (length - len(values))
    return values


def irreducibility_certificate(poly: Sequence[int]) -> Optional[int]:
    """
    Certify that a monic squarefree integer polynomial is irreducible over Q.

    A prime q below the bound certifies irreducibility when the polynomial stays
    irreducible modulo q, checked by the distinct-degree criterion
    gcd(z^(q^i) - z, p) = 1 for all i <= n/2.

    :param poly: the coefficients c0, ..., c(n-1), 1.
    :return: the certifying prime, or None when no prime below the bound works.
    """
    sympy_poly = polynomial(poly)
    n = sympy_poly.degree()
    if n > 1 and sympy_poly.ground_roots():
        raise ReduciblePolynomial(f"{sympy_poly.as_expr()} has a rational root")
    if n == 4:
        _, factors = sympy_poly.factor_list()
        if any(factor.degree() == 2 for factor, _ in factors):
            raise ReduciblePolynomial(f"{sympy_poly.as_expr()} has a quadratic factor")

    integer_coefficients = [int(c) for c in reversed(poly)]
    for prime in primerange(2, CERTIFICATE_PRIME_BOUND):
        reduced = gf_from_int_poly(integer_coefficients, prime)
        if len(reduced) - 1 != n:
            continue
        z = [1, 0]
        power = z
        for _ in range(n // 2):
            power = gf_pow_mod(power, prime, reduced, prime, ZZ)
            if gf_gcd(gf_sub(power, z, prime, ZZ), reduced, prime, ZZ) != [1]:
                break
        else:
            _logger.debug(f"{sympy_poly.as_expr()} is irreducible modulo {prime}")
            return prime
    _logger.warning(f"No prime below {CERTIFICATE_PRIME_BOUND} certifies {poly}")
    return None


@dataclass(frozen=True)
class NumberField:
    """A real number field Q(g) with g a selected real root of a monic integer polynomial."""

    poly: Tuple[int, ...]
    root_interval: Tuple[Fraction, Fraction]
    certificate: Optional[int] = None
    asserted_irreducible: bool = False

    @classmethod
    def from_poly(
        cls,
        poly: Sequence[int],
        root_hint: Optional[Tuple[Scalar, Scalar]] = None,
        assume_irreducible: bool = False,
    ) -> "NumberField":
        """
        Build a number field from its defining polynomial.

        :param poly: the integer coefficients c0, ..., c(n-1), 1 of a monic polynomial.
        :param root_hint: an optional rational interval isolating the selected real root.
        :param assume_irreducible: accept the polynomial when no prime certifies it.
        :return: the field, embedded through the selected root (default: the largest).
        """
        poly = tuple(int(c) for c in poly)
        if len(poly) < 2 or poly[-1] != 1:
            raise InvalidField(f"defining polynomial {list(poly)} must be monic of degree >= 1")
        sympy_poly = polynomial(poly)
        if sympy_poly.gcd(sympy_poly.diff(Z)).degree() > 0:
            raise InvalidField(f"{sympy_poly.as_expr()} is not squarefree")
        if sympy_poly.count_roots() < 1:
            raise InvalidField(f"{sympy_poly.as_expr()} has no real root")

        certificate = irreducibility_certificate(poly)
        if certificate is None and not assume_irreducible:
            raise InvalidField(
                f"irreducibility of {sympy_poly.as_expr()} is not certified; assert it explicitly"
            )

        if root_hint is None:
            (lo, hi), _ = sympy_poly.intervals()[-1]
            interval = (_from_sympy(lo), _from_sympy(hi))
        else:
            interval = (Fraction(root_hint[0]), Fraction(root_hint[1]))
            if interval[0] > interval[1]:
                raise InvalidField(f"empty root interval {interval}")
            count = sympy_poly.count_roots(_to_sympy(interval[0]), _to_sympy(interval[1]))
            if count != 1:
                raise InvalidField(f"interval {interval} contains {count} roots, expected 1")
        return cls(poly, interval, certificate, certificate is None)

    @property
    def degree(self) -> int:
        """Get the degree n."""
        return len(self.poly) - 1

    @cached_property
    def defining_poly(self) -> Poly:
        """Get the defining polynomial as a sympy polynomial."""
        return polynomial(self.poly)

    def element(self, coords: Sequence[Scalar]) -> "FieldElement":
        """Build an element from power basis coordinates."""
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def rational(self, value: Scalar) -> "FieldElement":
        """Embed a rational number."""
        return self.element([value] + [0] * (self.degree - 1))

    @property
    def zero(self) -> "FieldElement":
        """Get zero."""
        return self.rational(0)

    @property
    def one(self) -> "FieldElement":
        """Get one."""
        return self.rational(1)

    @property
    def generator(self) -> "FieldElement":
        """Get the power basis generator g."""
        if self.degree == 1:
            return self.rational(-self.poly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def embedding(self, precision: int = DEFAULT_PRECISION) -> "RealEmbedding":
        """Get the real embedding refined to the given precision in bits."""
        return RealEmbedding(self, self.root_interval).refined(precision)

    def __str__(self) -> str:
        """Get a readable description."""
        return f"Q[z]/({self.defining_poly.as_expr()})"


@dataclass(frozen=True)
class FieldElement:
    """An element of a number field as rational coordinates over the power basis."""

    field: NumberField = dataclass_field(repr=False)
    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        """Validate the coordinate count."""
        if len(self.coords) != self.field.degree:
            raise DimensionMismatch(
                f"{len(self.coords)} coordinates for a field of degree {self.field.degree}"
            )

    @cached_property
    def poly(self) -> Poly:
        """Get the representing polynomial of degree below n."""
        return polynomial(self.coords)

    def _lift(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        """Coerce a scalar into the field and check field compatibility."""
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} differs from {self.field}")
            return other
        return self.field.rational(Fraction(other))

    @property
    def is_zero(self) -> bool:
        """Check whether the element is zero."""
        return not any(self.coords)

    @property
    def is_rational(self) -> bool:
        """Check whether the element lies in Q."""
        return not any(self.coords[1:])

    def __add__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        """Add."""
        other = self._lift(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        """Negate."""
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        """Subtract."""
        return self + (-self._lift(other))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        """Subtract from a scalar."""
        return self._lift(other) - self

    def __mul__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        """Multiply."""
        if isinstance(other, FieldElement):
            return nf_mul(self, other)
        factor = Fraction(other)
        return FieldElement(self.field, tuple(factor * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        """Divide."""
        return self * nf_inv(self._lift(other))

    def __pow__(self, exponent: int) -> "FieldElement":
        """Raise to an integer power."""
        base = self if exponent >= 0 else nf_inv(self)
        result, exponent = self.field.one, abs(exponent)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        """Get the coordinate vector."""
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def nf_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Multiply two elements: polynomial product reduced modulo the defining polynomial."""
    b = a._lift(b)  # pylint: disable=protected-access
    product = (a.poly * b.poly).rem(a.field.defining_poly)
    return FieldElement(a.field, tuple(coefficients(product, a.field.degree)))


def nf_inv(a: FieldElement) -> FieldElement:
    """Invert a nonzero element by the extended Euclidean algorithm."""
    if a.is_zero:
        raise DivisionByZero("zero has no inverse")
    inverse = a.poly.invert(a.field.defining_poly)
    return FieldElement(a.field, tuple(coefficients(inverse, a.field.degree)))


def mult_matrix_powerbasis(a: FieldElement) -> RatMatrix:
    """Get the matrix of x -> a x in the power basis; column j holds the coordinates of a g^j."""
    g = a.field.generator
    columns = []
    power = a
    for _ in range(a.field.degree):
        columns.append(power.coords)
        power = power * g
    return RatMatrix(tuple(zip(*columns)))


def norm(a: FieldElement) -> Fraction:
    """Get the field norm, the determinant of the multiplication matrix."""
    from packages.valory.skills.torus_multipliers.utils.linalg import (  # pylint: disable=import-outside-toplevel
        det,
    )

    return det(mult_matrix_powerbasis(a))


def minimal_polynomial(a: FieldElement) -> List[Fraction]:
    """
    Get the monic minimal polynomial of an element over Q.

    The characteristic polynomial of the multiplication matrix is a power of
    the minimal polynomial, so the minimal polynomial is its squarefree part.

    :param a: the element.
    :return: the coefficients, constant term first.
    """
    charpoly = mult_matrix_powerbasis(a).to_domain().charpoly()
    poly = Poly([_to_sympy(from_domain(c)) for c in charpoly], Z, domain=QQ)
    return coefficients(poly.sqf_part().monic())


def evaluate_polynomial(poly: Sequence[Scalar], a: FieldElement) -> FieldElement:
    """Evaluate a rational polynomial (constant term first) at a field element by Horner's rule."""
    result = a.field.zero
    for coefficient in reversed(poly):
        result = result * a + Fraction(coefficient)
    return result


@dataclass(frozen=True)
class RealEmbedding:
    """The real embedding of a field through a rational isolating interval of its root."""

    field: NumberField
    interval: Tuple[Fraction, Fraction]

    @property
    def width(self) -> Fraction:
        """Get the interval width."""
        return self.interval[1] - self.interval[0]

    @property
    def precision(self) -> int:
        """Get the working precision in bits."""
        if self.width == 0:
            return 2**31 - 1
        return max(0, -int(mpmath.floor(mpmath.log(_mpf(self.width), 2))))

    def refined(self, bits: int) -> "RealEmbedding":
        """Get an embedding whose interval has width at most 2^-bits."""
        if self.width <= Fraction(1, 2**bits):
            return self
        lo, hi = self.field.defining_poly.refine_root(
            _to_sympy(self.interval[0]),
            _to_sympy(self.interval[1]),
            eps=_to_sympy(Fraction(1, 2**bits)),
        )
        return RealEmbedding(self.field, (_from_sympy(lo), _from_sympy(hi)))

    def evaluate(self, a: FieldElement, bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Approximate the real value of an element."""
        embedding = self.refined(bits + GUARD_BITS)
        with mpmath.workprec(bits + GUARD_BITS):
            midpoint = (_mpf(embedding.interval[0]) + _mpf(embedding.interval[1])) / 2
            return mpmath.polyval([_mpf(c) for c in reversed(a.coords)], midpoint)

    def sign(self, a: FieldElement) -> int:
        """
        Decide the sign of an element exactly.

        The isolating interval is refined until the representing polynomial has
        no root in it; the sign at the left endpoint is then the sign at the root.

        :param a: the element.
        :return: -1, 0 or 1.
        """
        if a.is_zero:
            return 0
        embedding, bits = self, max(self.precision, 8)
        while True:
            lo, hi = embedding.interval
            if lo == hi or a.poly.count_roots(_to_sympy(lo), _to_sympy(hi)) == 0:
                value = a.poly.eval(_to_sympy(lo))
                return 1 if value > 0 else -1
            bits *= 2
            _logger.debug(f"Refining the root of {self.field} to {bits} bits")
            embedding = embedding.refined(bits)


def embed_real_cmp(a: FieldElement, b: FieldElement) -> int:
    """Compare two elements under the selected real embedding: -1, 0 or 1."""
    difference = a - b
    if difference.is_zero:
        return 0
    return a.field.embedding(DEFAULT_PRECISION).sign(difference)


def approximate(a: FieldElement, bits: int = DEFAULT_PRECISION) -> float:
    """Approximate an element as a float."""
    return float(a.field.embedding(DEFAULT_PRECISION).evaluate(a, bits))
