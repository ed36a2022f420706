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
"""Tests for number field arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from packages.valory.skills.torus_multipliers.tests.constants import (
    CUBE_ROOT2,
    SQRT2,
    SQRT3,
    sqrt2,
)
from packages.valory.skills.torus_multipliers.utils.errors import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    ReduciblePolynomial,
)
from packages.valory.skills.torus_multipliers.utils.linalg import RatMatrix
from packages.valory.skills.torus_multipliers.utils.number_field import (
    FieldElement,
    NumberField,
    approximate,
    embed_real_cmp,
    evaluate_polynomial,
    irreducibility_certificate,
    minimal_polynomial,
    mult_matrix_powerbasis,
    nf_inv,
    nf_mul,
    norm,
)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(field: NumberField) -> st.SearchStrategy:
    """Strategy for field elements with small coordinates."""
    return st.lists(rationals, min_size=field.degree, max_size=field.degree).map(field.element)


class TestNumberField:
    """Tests for field construction."""

    def test_certificates(self) -> None:
        """Test the primes that certify irreducibility."""
        assert irreducibility_certificate([-2, 0, 1]) == 3
        assert irreducibility_certificate([-1, -2, 1]) == 3
        assert irreducibility_certificate([-2, 0, 0, 1]) == 7

    def test_reducible(self) -> None:
        """Test that factorizations are detected."""
        with pytest.raises(ReduciblePolynomial):
            NumberField.from_poly([-1, 0, 1])
        with pytest.raises(ReduciblePolynomial):
            NumberField.from_poly([6, 0, -5, 0, 1])

    @pytest.mark.parametrize(
        "poly",
        [
            [1, 2, 2],  # not monic
            [1, 2, 1],  # (z + 1)^2
            [1, 0, 1],  # no real root
            [5],
        ],
    )
    def test_invalid(self, poly: list) -> None:
        """Test polynomials that do not describe a real field."""
        with pytest.raises(InvalidField):
            NumberField.from_poly(poly)

    def test_default_root_is_largest(self) -> None:
        """Test that the default embedding uses the largest real root."""
        assert embed_real_cmp(SQRT2.generator, SQRT2.zero) == 1
        assert approximate(SQRT2.generator) == pytest.approx(1.4142135623730951, abs=1e-12)

    def test_root_hint(self) -> None:
        """Test that a root hint selects the embedding."""
        negative = NumberField.from_poly([-2, 0, 1], root_hint=(-2, -1))
        assert embed_real_cmp(negative.generator, negative.zero) == -1
        with pytest.raises(InvalidField):
            NumberField.from_poly([-2, 0, 1], root_hint=(-2, 2))

    def test_coordinate_count(self) -> None:
        """Test that elements have one coordinate per basis element."""
        with pytest.raises(DimensionMismatch):
            SQRT2.element([1, 2, 3])


class TestArithmetic:
    """Tests for field operations."""

    def test_products(self) -> None:
        """Test products and inverses in Q(sqrt 2)."""
        epsilon = sqrt2(1, 1)
        assert nf_mul(epsilon, epsilon) == sqrt2(3, 2)
        assert epsilon**3 == sqrt2(7, 5)
        assert nf_inv(epsilon) == sqrt2(-1, 1)
        assert epsilon**-2 == sqrt2(3, -2)
        assert 1 + SQRT2.generator == epsilon

    def test_division_by_zero(self) -> None:
        """Test that zero cannot be inverted."""
        with pytest.raises(DivisionByZero):
            nf_inv(SQRT2.zero)

    def test_field_mismatch(self) -> None:
        """Test that elements of different fields do not mix."""
        with pytest.raises(FieldMismatch):
            SQRT2.generator + SQRT3.generator

    def test_multiplication_matrix(self) -> None:
        """Test the power basis matrix of multiplication by 1 + sqrt 2."""
        assert mult_matrix_powerbasis(sqrt2(1, 1)) == RatMatrix(((1, 2), (1, 1)))
        assert norm(sqrt2(1, 1)) == -1

    def test_minimal_polynomial(self) -> None:
        """Test minimal polynomials of frequency ratios."""
        ratio = SQRT2.element([Fraction(8, 14), Fraction(5, 14)])
        assert minimal_polynomial(ratio) == [Fraction(1, 14), Fraction(-8, 7), 1]
        assert minimal_polynomial(SQRT2.rational(3)) == [-3, 1]
        g = CUBE_ROOT2.generator
        assert minimal_polynomial(g * g) == [-4, 0, 0, 1]

    def test_comparison(self) -> None:
        """Test exact comparisons under the embedding."""
        assert embed_real_cmp(SQRT2.generator, SQRT2.rational(Fraction(7, 5))) == 1
        assert embed_real_cmp(SQRT2.generator, SQRT2.rational(Fraction(3, 2))) == -1
        assert embed_real_cmp(sqrt2(1, 1), sqrt2(1, 1)) == 0
        # 99/70 is a convergent of sqrt 2, within 1e-4
        assert embed_real_cmp(SQRT2.generator, SQRT2.rational(Fraction(99, 70))) == -1

    @settings(deadline=None, max_examples=30, derandomize=True)
    @given(elements(SQRT2), elements(SQRT2))
    def test_field_axioms(self, a: FieldElement, b: FieldElement) -> None:
        """Test inverses and multiplicativity of the norm."""
        assume(not a.is_zero and not b.is_zero)
        assert a * nf_inv(a) == SQRT2.one
        assert (a * b) / b == a
        assert norm(a * b) == norm(a) * norm(b)

    @settings(deadline=None, max_examples=20, derandomize=True)
    @given(elements(CUBE_ROOT2))
    def test_minimal_polynomial_vanishes(self, a: FieldElement) -> None:
        """Test that an element is a root of its minimal polynomial."""
        assert evaluate_polynomial(minimal_polynomial(a), a).is_zero

    @settings(deadline=None, max_examples=30, derandomize=True)
    @given(elements(SQRT2))
    def test_comparison_agrees_with_floats(self, a: FieldElement) -> None:
        """Test that exact signs match clearly separated approximations."""
        value = approximate(a)
        assume(abs(value) > 1e-6)
        assert embed_real_cmp(a, SQRT2.zero) == (1 if value > 0 else -1)
