"""Test `cychains.core`."""

from __future__ import annotations

from fractions import Fraction

import pytest


def t(*exponent: int, coefficient: int = 1):
    from cychains.core import LaurentPoly

    return LaurentPoly.monomial(exponent, coefficient)


def test_laurent_mul() -> None:
    """Products of Laurent polynomials, including inverse monomials."""
    from cychains.core import LaurentPoly, laurent_mul

    assert laurent_mul(t(1, 0), t(-1, 0)) == LaurentPoly.one(2)
    assert laurent_mul(t(1, 0) + t(0, 1), LaurentPoly.zero(2)).is_zero()
    assert laurent_mul(t(1, 0) + t(0, 1), t(1, 0) - t(0, 1)) == t(2, 0) - t(0, 2)


def test_laurent_mul_dimension_mismatch() -> None:
    from cychains.core import LaurentPoly, laurent_mul
    from cychains.exceptions import DimensionMismatch

    with pytest.raises(DimensionMismatch, match="Cannot multiply"):
        laurent_mul(LaurentPoly.one(1), LaurentPoly.one(2))


@pytest.mark.parametrize(
    ("f", "expected"),
    [
        ((3, 0), ((2, 0), 3)),
        ((0, 1), None),
        ((-1, 1), ((-2, 1), -1)),
    ],
    ids=["t1^3", "t2", "t1^-1 t2"],
)
def test_laurent_partial(f: tuple[int, int], expected: tuple | None) -> None:
    """The power rule, with negative exponents."""
    from cychains.core import laurent_partial

    result = laurent_partial(t(*f), 1)
    if expected is None:
        assert result.is_zero()
    else:
        assert result == t(*expected[0], coefficient=expected[1])


def test_laurent_partial_axis_out_of_range() -> None:
    from cychains.core import laurent_partial
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="out of range"):
        laurent_partial(t(1, 1), 3)


def test_laurent_inverse_and_str() -> None:
    """Only monomials are invertible; printing uses sorted exponents."""
    from cychains.core import LaurentPoly
    from cychains.exceptions import InputError

    assert t(2, -1, coefficient=3).inverse() == LaurentPoly.monomial((-2, 1), Fraction(1, 3))
    with pytest.raises(InputError, match="not a unit"):
        (t(1, 0) + t(0, 1)).inverse()

    assert str(t(-1, 0, coefficient=-1)) == "-1 * t^[-1,0]"
    assert str(t(0, 0) + t(1, 0, coefficient=2)) == "1 + 2 * t^[1,0]"
    assert str(LaurentPoly.zero(2)) == "0"


def test_strip_constant() -> None:
    assert (t(0, 0, coefficient=5) + t(1, 0)).strip_constant() == t(1, 0)


@pytest.mark.parametrize(
    ("permutation", "degrees", "expected"),
    [
        ((1, 0), (1, 1), -1),
        ((0, 1, 2), (1, 1, 1), 1),
        ((1, 2, 0), (1, 1, 1), 1),
        ((1, 0), (2, 1), 1),
    ],
    ids=["odd swap", "identity", "cyclic shift of three odd", "even swap"],
)
def test_koszul_sign(permutation: tuple, degrees: tuple, expected: int) -> None:
    from cychains.core import koszul_sign

    assert koszul_sign(permutation, degrees) == expected


def test_koszul_sign_mismatch() -> None:
    from cychains.core import koszul_sign
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="does not match"):
        koszul_sign((0, 1), (1,))
    with pytest.raises(InputError, match="Not a permutation"):
        koszul_sign((0, 0), (1, 1))


def test_graded_degree() -> None:
    """Multivectors of rank `r` sit in degree `r - 1`, forms of rank `p` in `-p`."""
    from cychains.core import GradedDegree

    assert GradedDegree.of_multivector(2).value == 1
    assert GradedDegree.of_form(2).value == -2
    assert GradedDegree.of_multivector(0, u_power=1).value == 1
    assert GradedDegree.of_form(1).parity == 1


def test_useries_div_u() -> None:
    """Dividing by `u` shifts the coefficients and drops the cap by one."""
    from cychains.core import LaurentPoly, USeries, useries_div_u

    zero, x, y = LaurentPoly.zero(2), t(1, 0), t(0, 1)

    assert useries_div_u(USeries([zero, x])) == USeries([x])
    assert useries_div_u(USeries([zero, zero])).is_zero()
    assert useries_div_u(USeries([zero, zero, x, y])) == USeries([zero, x, y])


def test_useries_div_u_errors() -> None:
    from cychains.core import LaurentPoly, USeries, useries_div_u
    from cychains.exceptions import DivisionByUError

    with pytest.raises(DivisionByUError, match="nonzero"):
        useries_div_u(USeries([t(1, 0), LaurentPoly.zero(2)]))
    with pytest.raises(DivisionByUError, match="only to u\\^0"):
        useries_div_u(USeries([LaurentPoly.zero(2)]))


def test_useries_arithmetic() -> None:
    """Series of different caps combine at the smaller cap."""
    from cychains.core import LaurentPoly, USeries

    zero = LaurentPoly.zero(2)
    short = USeries([t(1, 0), t(0, 1)])
    long = USeries([t(1, 0), zero, t(1, 1)])

    assert (short + long).ucap == 1
    assert (short - long) == USeries([zero, t(0, 1)])
    assert long.times_u() == USeries([zero, t(1, 0), zero])
    assert short.bilinear(short, lambda a, b: a * b) == USeries(
        [t(2, 0), t(1, 1, coefficient=2)]
    )
    assert str(long) == "(1 * t^[1,0]) + u^2 * (1 * t^[1,1])"
