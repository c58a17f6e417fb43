"""Test `cychains.uactions`."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

import pytest
from hypothesis import given, settings, strategies as st

if TYPE_CHECKING:
    from typing import Callable

    from cychains.cartan import VolumeForm
    from cychains.utils.sampling import Sampler


def t(*exponent: int, coefficient: int = 1):
    from cychains.core import LaurentPoly

    return LaurentPoly.monomial(exponent, coefficient)


def vector(indices: tuple[int, ...], f=None):
    from cychains.cartan import MultiVector

    return MultiVector.basis(indices, 2, f)


def form(indices: tuple[int, ...], f=None):
    from cychains.cartan import DiffForm

    return DiffForm.basis(indices, 2, f)


def series(*coeffs):
    from cychains.core import USeries

    return USeries(list(coeffs))


def test_scale_u() -> None:
    from cychains.uactions import ScalingParam, scale_u

    gamma = series(vector((1,)), vector((2,)), vector((1,)))
    assert scale_u(2, gamma) == series(vector((1,)), vector((2,)) * 2, vector((1,)) * 4)
    assert scale_u(ScalingParam(Fraction(1, 2)), gamma) == scale_u(Fraction(1, 2), gamma)
    assert scale_u(0, gamma) == series(vector((1,)), vector((2,)) * 0, vector((1,)) * 0)


@pytest.mark.parametrize(
    "value", [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-1)], ids=["0", "1", "1/2", "-1"]
)
def test_action_Lt_example(value: Fraction) -> None:
    """`L^(t)_(d1) (t1 dt2) = (1 - t) dt2` for `omega_std`."""
    from cychains.cartan import VolumeForm
    from cychains.uactions import action_Lt

    gamma, alpha = series(vector((1,))), series(form((2,), t(1, 0)))
    result = action_Lt(value, gamma, alpha, VolumeForm.standard(2))
    assert result == series(form((2,)) * (1 - value))


@given(data=st.data())
@settings(max_examples=5)
def test_action_Lt_from_commutator(
    volume: VolumeForm, sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """The direct formula agrees with `(1/u)([u d, iota^(t)] + iota^(t)_(u div))`."""
    from cychains.uactions import action_Lt, action_Lt_from_commutator

    s = sampler(data)
    gamma, alpha = s.umultivector(), s.uform()
    for value in (Fraction(0), Fraction(1), Fraction(2, 3)):
        expected = action_Lt_from_commutator(value, gamma, alpha, volume)
        assert action_Lt(value, gamma, alpha, volume).truncate(expected.ucap) == expected


def test_h_t_example() -> None:
    """`h^(t)` only sees the positive u-powers of `gamma`."""
    from cychains.uactions import h_t

    gamma = series(vector((2,)), vector((1,)))
    alpha = series(form((1,)), form((1,)) * 0)
    assert h_t(3, gamma, alpha) == series(form(()) * -1)

    gamma = series(vector((1,)) * 0, vector((1,)) * 0, vector((1,)))
    alpha = series(form((1,)), form((1,)) * 0, form((1,)) * 0)
    assert h_t(Fraction(1, 2), gamma, alpha) == series(form(()) * 0, form(()) * -1)


@given(data=st.data())
@settings(max_examples=3)
def test_h_conditions(
    volume: VolumeForm, sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    from cychains.uactions import h_condition_bracket, h_condition_differential

    s = sampler(data)
    gamma, nu = s.umultivector(s.rank()), s.umultivector(s.rank())
    alpha = s.uform(s.rank())
    assert h_condition_differential(gamma, alpha, volume).is_zero()
    assert h_condition_bracket(gamma, nu, alpha, volume).is_zero()


def test_H1_taylor() -> None:
    from cychains.uactions import H1_SIGN, H1_taylor

    alpha = series(form((1,)), form((1,)) * 0)
    assert H1_taylor(0, [], alpha) == alpha

    gamma = series(vector((1,)) * 0, vector((1,)))
    assert H1_taylor(1, [gamma], alpha) == series(form(()) * H1_SIGN)
    assert H1_taylor(1, [gamma], alpha, s=1) == series(form(()))


def test_H1_taylor_errors() -> None:
    from cychains.exceptions import InputError
    from cychains.uactions import H1_taylor

    alpha = series(form((1,)))
    with pytest.raises(InputError, match="Expected 1 multivector arguments"):
        H1_taylor(1, [], alpha)
    with pytest.raises(InputError, match="Sign channel"):
        H1_taylor(0, [], alpha, s=2)


def test_dual_differential() -> None:
    """`delta(d1 omega_std) = u (-1/t1) omega_std`."""
    from cychains.cartan import MultiVector, VolumeForm, VTop
    from cychains.uactions import dual_differential

    omega = VolumeForm.standard(2)
    x = series(VTop(vector((1,)), omega), VTop(vector((2,)), omega))
    assert dual_differential(x) == series(
        VTop(MultiVector.zero(2), omega), VTop(vector((), t(-1, 0, coefficient=-1)), omega)
    )


def test_action_Lt_dual_volume_mismatch() -> None:
    from cychains.cartan import VolumeForm, VTop
    from cychains.exceptions import VolumeMismatch
    from cychains.uactions import action_Lt_dual

    x = series(VTop(vector((1,)), VolumeForm(2, (0, 0))))
    with pytest.raises(VolumeMismatch, match="expected omega_std"):
        action_Lt_dual(0, series(vector((2,))), x, VolumeForm.standard(2))


def test_action_Lt_dual_at_one_is_schouten() -> None:
    """At `t = 1` the divergence correction of the dual action drops out."""
    from cychains.cartan import VolumeForm, VTop, schouten
    from cychains.uactions import action_Lt_dual

    omega = VolumeForm.standard(2)
    gamma, nu = vector((1,)), vector((2,), t(1, 0))
    result = action_Lt_dual(1, series(gamma), series(VTop(nu, omega)), omega)
    assert result == series(VTop(schouten(gamma, nu), omega))


def test_rank_of() -> None:
    from cychains.exceptions import InputError
    from cychains.uactions import rank_of

    assert rank_of(series(vector((1, 2)), vector((1, 2)) * 0)) == 2
    assert rank_of(series(vector((1,)) * 0)) == 0
    with pytest.raises(InputError, match="rank-homogeneous"):
        rank_of(series(vector((1,)), vector(())))


def test_tpolynomial() -> None:
    from cychains.exceptions import InputError
    from cychains.uactions import TPolynomial

    p = TPolynomial({0: Fraction(1), 2: Fraction(3)})
    assert p.evaluate(2) == 13
    assert p.derivative().coeffs == {1: 6}
    assert (p - p).evaluate(5) == 0

    with pytest.raises(InputError, match="non-negative"):
        TPolynomial({-1: Fraction(1)})
    with pytest.raises(InputError, match="empty"):
        TPolynomial({}).evaluate(1)
