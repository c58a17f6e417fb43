"""Test `cychains.hochschild`."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from hypothesis import given, settings, strategies as st

if TYPE_CHECKING:
    from typing import Callable

    from cychains.utils.sampling import Sampler


def t(*exponent: int, coefficient: int = 1):
    from cychains.core import LaurentPoly

    return LaurentPoly.monomial(exponent, coefficient)


def test_gerstenhaber_examples() -> None:
    from cychains.hochschild import MultiDiffOp, gerstenhaber

    m0 = MultiDiffOp.product(2)
    d1, d2 = MultiDiffOp.derivation(1, 2), MultiDiffOp.derivation(2, 2)
    f = t(3, -1) + t(0, 2)

    assert gerstenhaber(m0, m0).is_zero()
    assert gerstenhaber(d1, d2).is_zero()
    assert gerstenhaber(d1, MultiDiffOp.function(f)) == MultiDiffOp.function(f.partial(1))


def test_gerstenhaber_rejects_top_valued() -> None:
    from cychains.exceptions import ArityMismatch
    from cychains.hochschild import MultiDiffOp, gerstenhaber

    top = MultiDiffOp.function(t(0, 0), top_valued=True)
    with pytest.raises(ArityMismatch, match="scalar-valued"):
        gerstenhaber(MultiDiffOp.product(2), top)


def test_cochain_differential() -> None:
    """Derivations are cocycles; the second derivative is not."""
    from cychains.hochschild import MultiDiffOp, cochain_differential

    assert cochain_differential(MultiDiffOp.derivation(1, 2, t(1, 1))).is_zero()
    assert cochain_differential(MultiDiffOp.product(2)).is_zero()

    second = MultiDiffOp({((2, 0),): t(0, 0)}, 1, 2)
    expected = MultiDiffOp({((1, 0), (1, 0)): t(0, 0, coefficient=-2)}, 2, 2)
    assert cochain_differential(second) == expected


@given(data=st.data())
@settings(max_examples=5)
def test_cochain_differential_square(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    from cychains.hochschild import cochain_differential

    phi = sampler(data).cochain(2)
    assert cochain_differential(cochain_differential(phi)).is_zero()


def test_chain_boundary_examples() -> None:
    from cychains.hochschild import HochChain, chain_boundary

    a0, a1, a2 = t(1, 0), t(0, 1), t(-1, 2)

    assert chain_boundary(HochChain.tensor(a0)).is_zero()
    assert chain_boundary(HochChain.tensor(a0, a1)).is_zero()
    assert chain_boundary(HochChain.tensor(a0, a1, a2)) == (
        HochChain.tensor(a0 * a1, a2)
        - HochChain.tensor(a0, a1 * a2)
        + HochChain.tensor(a2 * a0, a1)
    )


def test_chain_normalization() -> None:
    """Constants in slots past the first are dropped."""
    from cychains.hochschild import HochChain

    assert HochChain.tensor(t(1, 0), t(0, 0)).is_zero()
    assert HochChain.tensor(t(1, 0), t(0, 0) + t(0, 1)) == HochChain.tensor(t(1, 0), t(0, 1))


@given(data=st.data())
def test_cochain_action_of_product_is_boundary(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    from cychains.hochschild import MultiDiffOp, chain_boundary, cochain_action

    m0 = MultiDiffOp.product(2)
    c = sampler(data).chain(2)
    assert cochain_action(m0, c) == chain_boundary(c)


def test_cochain_action_edge_cases() -> None:
    """Derivations act by the Leibniz rule; windows wider than the chain contribute nothing."""
    from cychains.exceptions import ArityMismatch
    from cychains.hochschild import HochChain, MultiDiffOp, cochain_action

    assert cochain_action(MultiDiffOp.product(2), HochChain.tensor(t(1, 1))).is_zero()

    d1 = MultiDiffOp.derivation(1, 2)
    a0, a1 = t(2, 1), t(3, 0)
    assert cochain_action(d1, HochChain.tensor(a0, a1)) == HochChain.tensor(
        a0.partial(1), a1
    ) + HochChain.tensor(a0, a1.partial(1))

    with pytest.raises(ArityMismatch, match="scalar-valued"):
        cochain_action(MultiDiffOp.function(t(0, 0), top_valued=True), HochChain.tensor(a0))


def test_connes_B_examples() -> None:
    from cychains.hochschild import HochChain, connes_B

    one = t(0, 0)
    assert connes_B(HochChain.tensor(t(1, 0))) == HochChain.tensor(one, t(1, 0))
    assert connes_B(HochChain.tensor(one)).is_zero()
    assert str(connes_B(HochChain.tensor(t(1, 0), t(0, 1)))) == (
        "1 (x) t1 (x) t2 - 1 (x) t2 (x) t1"
    )


@given(data=st.data())
@settings(max_examples=5)
def test_negative_cyclic_differential_square(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """`(b + uB)^2 = 0` on u-series of normalized chains."""
    from cychains.hochschild import negative_cyclic_differential

    series = sampler(data).uchain(2)
    once = negative_cyclic_differential(series)
    assert negative_cyclic_differential(once).is_zero()


def test_hkr_chains() -> None:
    from cychains.cartan import DiffForm
    from cychains.hochschild import HochChain, chain_boundary, hkr_chains

    assert hkr_chains(HochChain.tensor(t(2, 1))) == DiffForm.function(t(2, 1))
    assert hkr_chains(HochChain.tensor(t(1, 0), t(0, 1))) == DiffForm.basis((2,), 2, t(1, 0))
    assert hkr_chains(chain_boundary(HochChain.tensor(t(1, 0), t(0, 1), t(2, -1)))).is_zero()


def test_hkr_cochain() -> None:
    from cychains.cartan import MultiVector
    from cychains.exceptions import InputError
    from cychains.hochschild import MultiDiffOp, hkr_cochain

    assert hkr_cochain(MultiVector.basis((1,), 2)) == MultiDiffOp.derivation(1, 2)

    bivector = hkr_cochain(MultiVector.basis((1, 2), 2))
    a, b = t(1, 0), t(0, 1)
    assert bivector(a, b) == t(0, 0, coefficient=-1)
    assert bivector(b, a) == t(0, 0)

    with pytest.raises(InputError, match="rank-homogeneous"):
        hkr_cochain(MultiVector.basis((1,), 2) + MultiVector.basis((), 2))


def test_pair_cochain_chain() -> None:
    from cychains.cartan import pair_cochain_chain
    from cychains.exceptions import ArityMismatch
    from cychains.hochschild import HochChain, MultiDiffOp

    phi = MultiDiffOp({((0, 0),): t(-1, -1)}, 1, 2, top_valued=True)
    assert pair_cochain_chain(phi, HochChain.tensor(t(1, 0), t(-1, 0))) == 1
    assert pair_cochain_chain(phi * 0, HochChain.tensor(t(1, 0), t(-1, 0))) == 0

    with pytest.raises(ArityMismatch, match="Cannot pair"):
        pair_cochain_chain(phi, HochChain.tensor(t(1, 0)))
    with pytest.raises(ArityMismatch, match="top-form-valued"):
        pair_cochain_chain(MultiDiffOp.derivation(1, 2), HochChain.tensor(t(1, 0)))


def test_multidiffop_evaluate_arity() -> None:
    from cychains.exceptions import ArityMismatch
    from cychains.hochschild import MultiDiffOp

    with pytest.raises(ArityMismatch, match="evaluated on 1 arguments"):
        MultiDiffOp.product(2).evaluate(t(1, 0))
