"""Test `cychains.extended`."""

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


def element(terms: dict):
    from cychains.extended import EElement

    return EElement(terms, 2)


@pytest.mark.parametrize(
    ("c", "expected"),
    [(0, [0, 0, 0]), (-1, [0, 0]), (-2, [1]), (1, [0, 0, 0])],
    ids=["c=0", "c=-1", "c=-2", "c=+1"],
)
def test_koszul_line_cohomology(c: int, expected: list[int]) -> None:
    """The only class on the 2-torus sits at `(p, q) = (2, 0)`."""
    from cychains.extended import koszul_line_cohomology

    assert [row.dim_cohomology for row in koszul_line_cohomology(2, c)] == expected


def test_koszul_line_cohomology_qmax() -> None:
    from cychains.exceptions import InputError
    from cychains.extended import koszul_line_cohomology

    rows = koszul_line_cohomology(3, 0, qmax=1)
    assert [(row.p, row.q) for row in rows] == [(0, 0), (1, 1)]
    assert rows[1].as_dict() == {"d": 3, "c": 0, "p": 1, "dim_cohomology": 0}

    with pytest.raises(InputError, match="must be positive"):
        koszul_line_cohomology(0, 0)


def test_extended_b_examples() -> None:
    """`b` kills one-slot elements and derivations, not products of derivatives."""
    from cychains.extended import extended_b

    assert extended_b(element({((), ((1, 0),)): t(1, 1)})).is_zero()
    assert extended_b(element({((1,), ((0, 0), (1, 0))): t(0, 1)})).is_zero()
    assert extended_b(element({((), ((1, 0), (1, 0))): t(0, 0)})) == element(
        {((), ((0, 0), (1, 0), (1, 0))): t(0, 0, coefficient=2)}
    )


def test_extended_nabla_example() -> None:
    """`nabla` is the de Rham differential of the value."""
    from cychains.extended import extended_nabla

    assert extended_nabla(element({((), ((0, 0),)): t(1, 0)})) == element(
        {
            ((1,), ((0, 0),)): t(0, 0),
            ((1,), ((1, 0),)): t(1, 0),
            ((2,), ((0, 1),)): t(1, 0),
        }
    )


@given(data=st.data())
def test_differentials_square_to_zero(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    from cychains.extended import extended_b, extended_nabla

    s = sampler(data)
    e = s.eelement(s.rank(), s.integer(0, 2))
    assert extended_b(extended_b(e)).is_zero()
    assert extended_nabla(extended_nabla(e)).is_zero()
    assert (extended_b(extended_nabla(e)) + extended_nabla(extended_b(e))).is_zero()


def test_cyclic_sigma() -> None:
    from cychains.extended import cyclic_sigma

    e = element({((), ((1, 0), (0, 0))): t(0, 0)})
    assert cyclic_sigma(e) == element({((), ((0, 0), (1, 0))): t(0, 0, coefficient=-1)})


@given(data=st.data())
@settings(max_examples=5)
def test_cyclic_sigma_order(sampler: Callable[..., Sampler], data: st.DataObject) -> None:
    """`sigma^(n+1) = id`."""
    from cychains.extended import cyclic_sigma

    s = sampler(data)
    for n in range(4):
        e = s.eelement(1, n)
        result = e
        for _ in range(n + 1):
            result = cyclic_sigma(result)
        assert result == e


def test_insert_unit() -> None:
    from cychains.extended import insert_unit

    assert insert_unit(element({((), ((0, 0), (1, 0))): t(1, 0)})) == element(
        {((), ((1, 0),)): t(1, 0)}
    )
    assert insert_unit(element({((), ((1, 0), (1, 0))): t(0, 0)})).is_zero()
    assert insert_unit(element({((), ((0, 0),)): t(0, 0)})).is_zero()


def test_connes_B_extended() -> None:
    from cychains.exceptions import NormalizationError
    from cychains.extended import connes_B_extended

    assert connes_B_extended(element({((), ((0, 0), (1, 0))): t(0, 0)})) == element(
        {((), ((1, 0),)): t(0, 0)}
    )

    with pytest.raises(NormalizationError, match="normalized"):
        connes_B_extended(element({((), ((0, 0), (0, 0))): t(0, 0)}))


@given(data=st.data())
@settings(max_examples=3)
def test_total_differential_square(
    sampler: Callable[..., Sampler], data: st.DataObject
) -> None:
    """`(b + nabla + uB)^2 = 0` and `(b + uB)^2 = 0` on normalized elements."""
    from cychains.extended import extended_total_differential

    s = sampler(data)
    series = s.u_series(lambda: s.eelement(1, 1), ucap=2)
    for with_nabla in (True, False):
        once = extended_total_differential(series, with_nabla=with_nabla)
        assert extended_total_differential(once, with_nabla=with_nabla).is_zero()


def test_embed_cochain() -> None:
    from cychains.cartan import DiffForm
    from cychains.exceptions import ArityMismatch
    from cychains.extended import embed_cochain
    from cychains.hochschild import MultiDiffOp

    phi = MultiDiffOp({((1, 0),): t(0, 0)}, 1, 2, top_valued=True)
    embedded = embed_cochain(phi)
    assert embedded == element({((1, 2), ((0, 0), (1, 0))): t(0, 0)})
    assert embedded.evaluate(t(0, 1), t(1, 0)) == DiffForm.basis((1, 2), 2, t(0, 1))

    with pytest.raises(ArityMismatch, match="top-form-valued"):
        embed_cochain(MultiDiffOp.derivation(1, 2))


def test_hkr_vt() -> None:
    from cychains.cartan import MultiVector, VolumeForm, VTop
    from cychains.extended import hkr_vt
    from cychains.hochschild import MultiDiffOp

    x = VTop(MultiVector.basis((1,), 2), VolumeForm.standard(2))
    assert hkr_vt(x) == MultiDiffOp({((1, 0),): t(-1, -1)}, 1, 2, top_valued=True)


def test_project_top_mod_exact() -> None:
    """Exact elements project to zero; the volume class survives."""
    from cychains.extended import ProjectionWindow, extended_nabla, project_top_mod_exact

    window = ProjectionWindow(-1, 1, 1)
    exact = extended_nabla(element({((1,), ((0, 0),)): t(1, 0)}))
    assert not exact.is_zero()
    assert project_top_mod_exact(exact, window).is_zero()

    volume = element({((1, 2), ((0, 0),)): t(-1, -1)})
    assert project_top_mod_exact(volume, window) == volume

    lower = element({((1,), ((0, 0),)): t(1, 0)})
    assert project_top_mod_exact(lower, window).is_zero()


def test_project_top_mod_exact_window_errors() -> None:
    from cychains.exceptions import InputError, WindowTooSmall
    from cychains.extended import ProjectionWindow, project_top_mod_exact

    with pytest.raises(WindowTooSmall, match="lies outside"):
        project_top_mod_exact(element({((1, 2), ((0, 0),)): t(3, 0)}), ProjectionWindow())
    with pytest.raises(InputError, match="Invalid projection window"):
        ProjectionWindow(2, -2)
