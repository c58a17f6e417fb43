"""Test `cychains.cartan`."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from hypothesis import given, strategies as st

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


def test_wedge() -> None:
    from cychains.cartan import MultiVector, wedge

    assert wedge(vector((1,)), vector((1,))).is_zero()
    assert wedge(vector(()), vector((2,), t(1, 0))) == vector((2,), t(1, 0))
    assert wedge(vector((1,)), vector((2,))) == MultiVector({(1, 2): t(0, 0)}, 2)
    assert wedge(vector((2,)), vector((1,))) == vector((1, 2)) * -1


def test_contract() -> None:
    """Contraction removes indices from the left, innermost vector first."""
    from cychains.cartan import contract

    alpha = form((1, 2), t(1, 1))
    assert contract(vector((), t(0, 1)), alpha) == form((1, 2), t(1, 2))
    assert contract(vector((1,)), form((1, 2))) == form((2,))
    assert contract(vector((1, 2)), form((1, 2))) == form(()) * -1
    assert contract(vector((1, 2)), form((1, 2))) == contract(
        vector((1,)), contract(vector((2,)), form((1, 2)))
    )


def test_de_rham() -> None:
    from cychains.cartan import de_rham

    assert de_rham(form((), t(1, 0))) == form((1,))
    assert de_rham(form((1,))).is_zero()
    assert de_rham(form((2,), t(1, 0))) == form((1, 2))


def test_lie_derivative() -> None:
    from cychains.cartan import de_rham, lie_derivative

    assert lie_derivative(vector((1,)), form((2,), t(1, 0))) == form((2,))
    f = t(2, -1) + t(0, 3)
    assert lie_derivative(vector((), f), form((), t(0, 0))) == de_rham(form((), f))


def test_schouten_examples() -> None:
    """The bracket extends the Lie bracket and vector fields acting on functions."""
    from cychains.cartan import schouten

    assert schouten(vector((), t(1, 0)), vector((), t(0, 1))).is_zero()
    assert schouten(vector((1,)), vector((1,), t(1, 0))) == vector((1,))
    assert schouten(vector((1,)), vector((), t(1, 0))) == vector(())


@given(data=st.data())
def test_schouten_decomposable_agrees(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """On wedges of vector fields, the bracket is the signed double sum."""
    from cychains.cartan import schouten, schouten_decomposable, wedge

    s = sampler(data)
    v1, v2, w1 = (s.multivector(1) for _ in range(3))
    assert schouten(wedge(v1, v2), w1) == schouten_decomposable([v1, v2], [w1])


def test_schouten_mixed_series_error() -> None:
    from cychains.cartan import schouten
    from cychains.core import USeries
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="u-series with a plain multivector"):
        schouten(USeries([vector((1,))]), vector((2,)))


def test_divergence() -> None:
    from cychains.cartan import VolumeForm, divergence

    omega = VolumeForm.standard(2)
    assert divergence(omega, vector((1,), t(1, 0))).is_zero()
    assert divergence(omega, vector((1,))) == vector((), t(-1, 0, coefficient=-1))
    assert divergence(omega, vector((), t(3, 1))).is_zero()


@given(data=st.data())
def test_divergence_definition(
    volume: VolumeForm, sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """`iota_(div g) Omega = d iota_g Omega` for every test density."""
    from cychains.cartan import contract_volume, de_rham, divergence

    gamma = sampler(data).multivector()
    assert contract_volume(divergence(volume, gamma), volume) == de_rham(
        contract_volume(gamma, volume)
    )


def test_residue_integral() -> None:
    from cychains.cartan import VolumeForm, de_rham, residue_integral

    omega = VolumeForm.standard(2).as_form()
    assert residue_integral(omega) == 1
    assert residue_integral(omega * t(1, 0)) == 0
    assert residue_integral(de_rham(form((2,), t(3, 1)))) == 0


def test_residue_integral_rank_error() -> None:
    from cychains.cartan import integrate, residue_integral
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="top-rank"):
        residue_integral(form((1,)))
    assert integrate(form((1,))) == 0


def test_pair_vt_form() -> None:
    from cychains.cartan import VolumeForm, VTop, pair_vt_form

    omega = VolumeForm.standard(2)
    assert pair_vt_form(VTop(vector((1, 2)), omega), form((1, 2))) == -1
    assert pair_vt_form(VTop(vector((), t(0, 0)), omega), form((1,))) == 0
    assert pair_vt_form(VTop(vector((1,)), omega), form((1,)) * 0) == 0


def test_vtop_volume_mismatch() -> None:
    from cychains.cartan import VolumeForm, VTop
    from cychains.exceptions import VolumeMismatch

    first = VTop(vector((1,)), VolumeForm.standard(2))
    second = VTop(vector((1,)), VolumeForm(2, (0, 0)))
    with pytest.raises(VolumeMismatch, match="Cannot combine"):
        first + second


def test_volume_form_errors() -> None:
    from cychains.cartan import VolumeForm
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="must be a unit"):
        VolumeForm(0, (0, 0))


def test_formal_adjoint() -> None:
    """`(d/dt1)'` is `-d/dt1 + 1/t1` for `omega_std` and `-d/dt1` for `t1 omega_std`."""
    from cychains.cartan import DiffOp, VolumeForm, formal_adjoint_diffop

    partial = DiffOp.partial(1, 2)
    multiplication = DiffOp.multiplication(t(2, -1) + t(0, 1))

    omega = VolumeForm.standard(2)
    assert formal_adjoint_diffop(multiplication, omega) == multiplication
    assert formal_adjoint_diffop(partial, omega) == DiffOp.multiplication(t(-1, 0)) - partial
    assert formal_adjoint_diffop(partial, VolumeForm(1, (1, 0))) == -partial


@given(data=st.data())
def test_formal_adjoint_integration_by_parts(
    volume: VolumeForm, sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """`int (D f) g Omega = int f (D' g) Omega` on random operators of order at most 2."""
    from cychains.cartan import DiffOp, formal_adjoint_diffop

    s = sampler(data)
    operator = DiffOp({s.multi_index(max_order=2, nonzero=False): s.laurent()}, 2)
    f, g = s.laurent(), s.laurent()
    adjoint = formal_adjoint_diffop(operator, volume)
    left = (operator(f) * g * volume.density()).coefficient((-1, -1))
    right = (f * adjoint(g) * volume.density()).coefficient((-1, -1))
    assert left == right


def test_invalid_indices() -> None:
    from cychains.cartan import MultiVector
    from cychains.exceptions import InputError

    with pytest.raises(InputError, match="strictly increasing"):
        MultiVector({(2, 1): t(0, 0)}, 2)
    with pytest.raises(InputError, match="strictly increasing"):
        MultiVector({(3,): t(0, 0)}, 2)
