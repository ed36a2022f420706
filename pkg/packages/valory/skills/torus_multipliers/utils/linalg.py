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
"""Exact rational and integer linear algebra."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Any, List, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from packages.valory.skills.torus_multipliers import PUBLIC_ID
from packages.valory.skills.torus_multipliers.utils.errors import (
    DimensionMismatch,
    OrderNotFound,
    SingularMatrix,
)


_logger = logging.getLogger(
    f"aea.packages.{PUBLIC_ID.author}.skills.{PUBLIC_ID.name}.utils.linalg"
)

Rational = Fraction
IntRows = Tuple[Tuple[int, ...], ...]
RatRows = Tuple[Tuple[Fraction, ...], ...]


def _check_square(rows: Sequence[Sequence[Any]]) -> int:
    """Check that the rows describe a non-empty square matrix and return its size."""
    n = len(rows)
    if n == 0:
        raise DimensionMismatch("matrices must have dimension at least 1")
    if any(len(row) != n for row in rows):
        raise DimensionMismatch(f"matrix is not square: {list(map(len, rows))} x {n}")
    return n


@dataclass(frozen=True)
class IntMatrix:
    """A square matrix with arbitrary-precision integer entries."""

    rows: IntRows

    def __post_init__(self) -> None:
        """Normalize the rows and validate the shape."""
        rows = tuple(tuple(int(entry) for entry in row) for row in self.rows)
        _check_square(rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        """Get the n x n identity matrix."""
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, n: int, value: int) -> "IntMatrix":
        """Get value times the n x n identity matrix."""
        return cls(tuple(tuple(value if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        """Get the dimension."""
        return len(self.rows)

    def column(self, j: int) -> Tuple[int, ...]:
        """Get the j-th column."""
        return tuple(row[j] for row in self.rows)

    def to_rational(self) -> "RatMatrix":
        """Embed into the rational matrices."""
        return RatMatrix(self.rows)

    def to_domain(self) -> DomainMatrix:
        """Convert to a sympy domain matrix over ZZ."""
        return DomainMatrix(
            [[ZZ(entry) for entry in row] for row in self.rows], (self.n, self.n), ZZ
        )

    def __matmul__(self, other: Union["IntMatrix", "RatMatrix"]) -> Any:
        """Multiply two matrices exactly."""
        if isinstance(other, RatMatrix):
            return self.to_rational() @ other
        _same_size(self, other)
        product = self.to_domain().matmul(other.to_domain())
        return IntMatrix(
            tuple(tuple(int(entry) for entry in row) for row in product.to_list())
        )

    def __pow__(self, exponent: int) -> "IntMatrix":
        """Raise to a nonnegative integer power by repeated squaring."""
        if exponent < 0:
            raise ValueError("negative powers of integer matrices are not integral")
        result, base = IntMatrix.identity(self.n), self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def apply(self, vector: Sequence[Any]) -> List[Any]:
        """Apply the matrix to a column vector of ring elements."""
        if len(vector) != self.n:
            raise DimensionMismatch(f"vector of length {len(vector)} for dimension {self.n}")
        return [
            reduce(lambda acc, term: acc + term, (b * v for b, v in zip(row, vector)))
            for row in self.rows
        ]

    def to_lists(self) -> List[List[int]]:
        """Get the entries as nested lists."""
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        """Get a compact representation."""
        return str(self.to_lists())


@dataclass(frozen=True)
class RatMatrix:
    """A square matrix with exact rational entries."""

    rows: RatRows

    def __post_init__(self) -> None:
        """Normalize the rows and validate the shape."""
        rows = tuple(tuple(Fraction(entry) for entry in row) for row in self.rows)
        _check_square(rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        """Get the n x n identity matrix."""
        return IntMatrix.identity(n).to_rational()

    @property
    def n(self) -> int:
        """Get the dimension."""
        return len(self.rows)

    @property
    def denominator(self) -> int:
        """Get the least common denominator of the entries."""
        return lcm(*(entry.denominator for row in self.rows for entry in row))

    def is_integral(self) -> bool:
        """Check whether every entry is an integer."""
        return self.denominator == 1

    def to_integer(self) -> IntMatrix:
        """Convert an integral matrix to an integer matrix."""
        if not self.is_integral():
            raise ValueError(f"matrix {self} is not integral")
        return IntMatrix(tuple(tuple(int(entry) for entry in row) for row in self.rows))

    def scaled(self, factor: Fraction) -> "RatMatrix":
        """Multiply every entry by a rational factor."""
        return RatMatrix(tuple(tuple(factor * entry for entry in row) for row in self.rows))

    def transpose(self) -> "RatMatrix":
        """Get the transpose."""
        return RatMatrix(tuple(zip(*self.rows)))

    def column(self, j: int) -> Tuple[Fraction, ...]:
        """Get the j-th column."""
        return tuple(row[j] for row in self.rows)

    def to_domain(self) -> DomainMatrix:
        """Convert to a sympy domain matrix over QQ."""
        return DomainMatrix(
            [[to_qq(entry) for entry in row] for row in self.rows], (self.n, self.n), QQ
        )

    def __matmul__(self, other: Union[IntMatrix, "RatMatrix"]) -> "RatMatrix":
        """Multiply two matrices exactly."""
        if isinstance(other, IntMatrix):
            other = other.to_rational()
        _same_size(self, other)
        product = self.to_domain().matmul(other.to_domain())
        return RatMatrix(
            tuple(tuple(from_domain(entry) for entry in row) for row in product.to_list())
        )

    def apply(self, vector: Sequence[Fraction]) -> List[Fraction]:
        """Apply the matrix to a rational column vector."""
        if len(vector) != self.n:
            raise DimensionMismatch(f"vector of length {len(vector)} for dimension {self.n}")
        return [sum((a * Fraction(v) for a, v in zip(row, vector)), Fraction(0)) for row in self.rows]

    def to_lists(self) -> List[List[Fraction]]:
        """Get the entries as nested lists."""
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        """Get a compact representation."""
        return str([[str(entry) for entry in row] for row in self.rows])


def _same_size(left: Any, right: Any) -> None:
    """Check that two matrices can be multiplied."""
    if left.n != right.n:
        raise DimensionMismatch(f"cannot multiply {left.n}x{left.n} by {right.n}x{right.n}")


def to_qq(value: Fraction) -> Any:
    """Convert a fraction to an element of sympy's QQ."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_domain(value: Any) -> Fraction:
    """Convert an element of ZZ or QQ to a fraction."""
    if hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(int(value))


def as_rational(matrix: Union[IntMatrix, RatMatrix]) -> RatMatrix:
    """View any matrix as a rational matrix."""
    return matrix.to_rational() if isinstance(matrix, IntMatrix) else matrix


def hnf_of_columns(columns: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """
    Get the Hermite normal form of the lattice generated by integer columns.

    The columns may be redundant; the result is the square basis of the
    generated lattice.

    :param columns: the integer generators, each of length n.
    :param n: the ambient dimension.
    :return: the column Hermite normal form.
    """
    if not columns or any(len(column) != n for column in columns):
        raise DimensionMismatch(f"generators must be non-empty vectors of length {n}")
    m = len(columns)
    generators = DomainMatrix(
        [[ZZ(int(columns[j][i])) for j in range(m)] for i in range(n)], (n, m), ZZ
    )
    reduced = hermite_normal_form(generators)
    if reduced.shape != (n, n):
        raise SingularMatrix(
            f"generators span a lattice of rank {reduced.shape[1]} < {n}"
        )
    _logger.debug(f"Hermite normal form of {m} generators in dimension {n}")
    return IntMatrix(tuple(tuple(int(entry) for entry in row) for row in reduced.to_list()))


def hnf(matrix: IntMatrix) -> IntMatrix:
    """
    Get the column Hermite normal form of a nonsingular integer matrix.

    The result H generates the same column lattice, is upper triangular with a
    positive diagonal, and its entries right of the diagonal are reduced
    modulo the diagonal entry of their row.

    :param matrix: a nonsingular integer matrix.
    :return: the Hermite normal form.
    """
    return hnf_of_columns([matrix.column(j) for j in range(matrix.n)], matrix.n)


def det(matrix: Union[IntMatrix, RatMatrix]) -> Fraction:
    """Get the exact determinant by fraction-free elimination."""
    rational = as_rational(matrix)
    denominator = rational.denominator
    cleared = rational.scaled(Fraction(denominator)).to_integer()
    return Fraction(int(cleared.to_domain().det()), denominator**rational.n)


def inverse(matrix: Union[IntMatrix, RatMatrix]) -> RatMatrix:
    """Get the exact inverse."""
    rational = as_rational(matrix)
    if det(rational) == 0:
        raise SingularMatrix(f"matrix {rational} is singular")
    inverted = rational.to_domain().inv()
    return RatMatrix(
        tuple(tuple(from_domain(entry) for entry in row) for row in inverted.to_list())
    )


def charpoly(matrix: IntMatrix) -> List[int]:
    """
    Get the characteristic polynomial of an integer matrix.

    :param matrix: the matrix.
    :return: the coefficients c0, ..., c(n-1), 1 of det(zI - M), constant term first.
    """
    coefficients = matrix.to_domain().charpoly()
    return [int(c) for c in reversed(coefficients)]


def _reduce_mod(matrix: IntMatrix, modulus: int) -> IntMatrix:
    """Reduce every entry into [0, modulus)."""
    return IntMatrix(tuple(tuple(entry % modulus for entry in row) for row in matrix.rows))


def matrix_order_mod(matrix: IntMatrix, modulus: int) -> int:
    """
    Get the multiplicative order of an integer matrix modulo a positive integer.

    :param matrix: a matrix whose determinant is a unit modulo the modulus.
    :param modulus: the positive modulus d.
    :return: the smallest t >= 1 with M^t = I (mod d).
    """
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if modulus == 1:
        return 1
    determinant = int(det(matrix))
    if gcd(determinant, modulus) != 1:
        raise OrderNotFound(
            f"determinant {determinant} is not invertible modulo {modulus}"
        )
    n = matrix.n
    identity = IntMatrix.identity(n)
    base = _reduce_mod(matrix, modulus)
    power = base
    cap = modulus ** (n * n)
    for order in range(1, cap + 1):
        if power == identity:
            return order
        power = _reduce_mod(power @ base, modulus)
    raise OrderNotFound(f"no order of {matrix} modulo {modulus} below {cap}")
