"""Tests for utils/sampling.py"""

from __future__ import annotations

from typing import TYPE_CHECKING

from hypothesis import find, given, strategies as st

from cychains.utils.sampling import index_sets

if TYPE_CHECKING:
    from typing import Callable

    from cychains.utils.sampling import Sampler


def test_standard_volumes() -> None:
    """The test densities are `1`, `t1` and `3 t1^2 t2^-1`."""
    from cychains.core import LaurentPoly
    from cychains.utils.sampling import standard_volumes

    volumes = standard_volumes(2)
    assert [volume.density() for volume in volumes] == [
        LaurentPoly.monomial((0, 0)),
        LaurentPoly.monomial((1, 0)),
        LaurentPoly.monomial((2, -1), 3),
    ]
    assert [volume.dim for volume in standard_volumes(3)] == [3, 3, 3]
    assert len(standard_volumes(1)) == 3


def test_identity_random_is_deterministic() -> None:
    """Each identity has its own reproducible search seed."""
    from cychains.utils.sampling import identity_random

    assert identity_random(42, "cartan.wedge.assoc").random() == identity_random(
        42, "cartan.wedge.assoc"
    ).random()
    assert identity_random(42, "a").random() != identity_random(42, "b").random()
    assert identity_random(42, "a").random() != identity_random(43, "a").random()


@given(data=st.data())
def test_sampler_shapes(sampler: Callable[..., Sampler], data: st.DataObject) -> None:
    """Drawn elements respect the window, the rank and normalization."""
    s = sampler(data, window=(-1, 1))

    gamma = s.multivector(2)
    assert gamma.ranks() <= {2}
    for _, coefficient in gamma.items():
        for exponent, _ in coefficient.items():
            assert all(-1 <= e <= 1 for e in exponent)

    chain = s.chain(2)
    assert chain.lengths() <= {2}
    assert all(all(any(slot) for slot in tensor[1:]) for tensor, _ in chain.items())

    assert s.cochain(2).is_normalized()
    assert s.eelement(1, 2).is_normalized()
    assert s.umultivector(1).ucap == 2
    assert s.integer(3, 5) in (3, 4, 5)
    assert sorted(s.permutation(4)) == [0, 1, 2, 3]


@given(indices=st.integers(0, 3).flatmap(lambda rank: index_sets(3, rank)))
def test_index_sets_are_increasing(indices: tuple[int, ...]) -> None:
    assert list(indices) == sorted(set(indices))
    assert all(1 <= index <= 3 for index in indices)


def test_minimal_laurent_polynomial() -> None:
    """Strategies shrink towards one monomial `1`."""
    from cychains.core import LaurentPoly
    from cychains.utils.sampling import laurent_polys

    assert find(laurent_polys(2), lambda f: True) == LaurentPoly.monomial((0, 0), 1)
    assert len(find(laurent_polys(2), lambda f: len(f.terms) == 2).terms) == 2


def test_minimal_u_series() -> None:
    """u-series shrink to zero coefficients."""
    from cychains.core import LaurentPoly
    from cychains.utils.sampling import laurent_polys, u_series

    series = find(u_series(laurent_polys(1), 2), lambda f: not f.coefficient(1).is_zero())
    assert series.ucap == 2
    assert series.coefficient(0).is_zero()
    assert series.coefficient(1) == LaurentPoly.monomial((0,), 1)
    assert series.coefficient(2).is_zero()
