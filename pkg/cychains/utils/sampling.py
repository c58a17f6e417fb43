"""Hypothesis strategies for the algebraic types, and a sampler drawing from them.

Every random choice goes through a hypothesis draw, so counterexamples are shrunk by
hypothesis itself: smaller term counts, zero u-coefficients and exponents close to zero.
"""

from __future__ import annotations

import logging
import random
from typing import TYPE_CHECKING

from hypothesis import strategies as st

from cychains.cartan import DiffForm, MultiVector, VolumeForm, VTop
from cychains.core import LaurentPoly, USeries
from cychains.extended import EElement
from cychains.hochschild import HochChain, MultiDiffOp

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any, Callable, Sequence, TypeVar

    from hypothesis.strategies import DrawFn, SearchStrategy

    X = TypeVar("X")

LOGGER = logging.getLogger(__name__)

COEFFICIENTS = (1, -1, 2, -2, 3, -3)
"""Nonzero coefficients of sampled monomials, simplest first."""

SCALARS = (1, -1, 2, -2, 3)

DENSITIES = ((1, (0, 0)), (1, (1, 0)), (3, (2, -1)))
"""Volume densities `1`, `t1` and `3 t1^2 t2^-1` on the 2-torus, as `(c, exponent)`."""


def volume_from_density(coefficient: int, exponent: Sequence[int]) -> VolumeForm:
    """The volume form `c t^e dt1^..^dtd`, i.e. `c t^(e+1) omega_std`."""
    return VolumeForm(coefficient, tuple(e + 1 for e in exponent))


def standard_volumes(dim: int) -> list[VolumeForm]:
    """The three test densities, padded with zero exponents to `dim` variables."""
    volumes = []
    for coefficient, exponent in DENSITIES:
        padded = (tuple(exponent) + (0,) * dim)[:dim]
        volume = volume_from_density(coefficient, padded)
        if volume not in volumes:
            volumes.append(volume)
    return volumes


def identity_random(seed: int, identity: str) -> random.Random:
    """The generator seeding the search for counterexamples to one identity."""
    return random.Random(f"{seed}:{identity}")


# Strategies


def exponents(dim: int, window: tuple[int, int]) -> SearchStrategy[tuple[int, ...]]:
    lo, hi = window
    return st.tuples(*(st.integers(lo, hi) for _ in range(dim)))


def nonconstant_exponents(dim: int, window: tuple[int, int]) -> SearchStrategy[tuple[int, ...]]:
    return exponents(dim, window).filter(any)


def multi_indices(
    dim: int, max_order: int = 1, nonzero: bool = True
) -> SearchStrategy[tuple[int, ...]]:
    """Derivative multi-indices with at most `max_order` derivatives per variable."""
    alphas = st.tuples(*(st.integers(0, max_order) for _ in range(dim)))
    return alphas.filter(any) if nonzero else alphas


def index_sets(dim: int, rank: int) -> SearchStrategy[tuple[int, ...]]:
    """Increasing tuples of `rank` distinct indices in `1..dim`."""
    return st.lists(st.integers(1, dim), min_size=rank, max_size=rank, unique=True).map(
        lambda indices: tuple(sorted(indices))
    )


@st.composite
def monomials(draw: DrawFn, dim: int, window: tuple[int, int] = (-4, 4)) -> LaurentPoly:
    return LaurentPoly.monomial(draw(exponents(dim, window)), draw(st.sampled_from(COEFFICIENTS)))


@st.composite
def laurent_polys(
    draw: DrawFn,
    dim: int,
    window: tuple[int, int] = (-4, 4),
    max_terms: int = 2,
    terms: int | None = None,
) -> LaurentPoly:
    count = terms if terms is not None else draw(st.integers(1, max_terms))
    result = LaurentPoly.zero(dim)
    for _ in range(count):
        result = result + draw(monomials(dim, window))
    return result


@st.composite
def _homogeneous_fields(
    draw: DrawFn,
    kind: type[MultiVector] | type[DiffForm],
    dim: int,
    rank: int,
    window: tuple[int, int],
    max_terms: int,
) -> Any:
    result = kind.zero(dim)
    for _ in range(draw(st.integers(1, max_terms))):
        result = result + kind({draw(index_sets(dim, rank)): draw(monomials(dim, window))}, dim)
    return result


def multivectors(
    dim: int, rank: int, window: tuple[int, int] = (-4, 4), max_terms: int = 2
) -> SearchStrategy[MultiVector]:
    """Multivectors homogeneous of the given rank."""
    return _homogeneous_fields(MultiVector, dim, rank, window, max_terms)


def forms(
    dim: int, rank: int, window: tuple[int, int] = (-4, 4), max_terms: int = 2
) -> SearchStrategy[DiffForm]:
    return _homogeneous_fields(DiffForm, dim, rank, window, max_terms)


def vtops(
    volume: VolumeForm, rank: int, window: tuple[int, int] = (-4, 4), max_terms: int = 2
) -> SearchStrategy[VTop]:
    return multivectors(len(volume.exponent), rank, window, max_terms).map(
        lambda mv: VTop(mv, volume)
    )


@st.composite
def u_series(draw: DrawFn, elements: SearchStrategy[X], ucap: int) -> USeries[X]:
    """u-series with coefficients from `elements`; each coefficient may be left zero."""
    coeffs = []
    for _ in range(ucap + 1):
        keep = draw(st.booleans())
        value = draw(elements)
        coeffs.append(value if keep else value * 0)
    return USeries(coeffs)


@st.composite
def cochains(
    draw: DrawFn,
    dim: int,
    arity: int,
    window: tuple[int, int] = (-4, 4),
    max_order: int = 1,
    normalized: bool = True,
    top_valued: bool = False,
    max_terms: int = 2,
) -> MultiDiffOp:
    """Multidifferential cochains with at most `max_order` derivatives per slot."""
    terms: dict[tuple[tuple[int, ...], ...], LaurentPoly] = {}
    for _ in range(draw(st.integers(1, max_terms))):
        slots = tuple(draw(multi_indices(dim, max_order, normalized)) for _ in range(arity))
        terms[slots] = terms.get(slots, LaurentPoly.zero(dim)) + draw(monomials(dim, window))
    return MultiDiffOp(terms, arity, dim, top_valued=top_valued)


@st.composite
def chains(
    draw: DrawFn, dim: int, length: int, window: tuple[int, int] = (-4, 4), max_terms: int = 2
) -> HochChain:
    """Normalized chains `sum c a0 (x) .. (x) a_length` of monomials."""
    terms: dict[tuple[tuple[int, ...], ...], int] = {}
    for _ in range(draw(st.integers(1, max_terms))):
        tensor = (
            draw(exponents(dim, window)),
            *(draw(nonconstant_exponents(dim, window)) for _ in range(length)),
        )
        terms[tensor] = terms.get(tensor, 0) + draw(st.sampled_from(COEFFICIENTS))
    return HochChain(terms, dim)


@st.composite
def eelements(
    draw: DrawFn,
    dim: int,
    rank: int,
    n: int,
    window: tuple[int, int] = (-4, 4),
    max_order: int = 1,
    normalized: bool = True,
    max_terms: int = 2,
) -> EElement:
    """Homogeneous elements of the extended complex with `n + 1` slots."""
    terms: dict[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], LaurentPoly] = {}
    for _ in range(draw(st.integers(1, max_terms))):
        slots = (
            draw(multi_indices(dim, max_order, nonzero=False)),
            *(draw(multi_indices(dim, max_order, normalized)) for _ in range(n)),
        )
        key = (draw(index_sets(dim, rank)), slots)
        terms[key] = terms.get(key, LaurentPoly.zero(dim)) + draw(monomials(dim, window))
    return EElement(terms, dim)


class Sampler:
    """Draws elements on the `dim`-torus with exponents in `window`.

    `draw` is the draw function of a composite strategy or of `st.data()`.
    """

    def __init__(
        self,
        draw: Callable[[SearchStrategy[Any]], Any],
        dim: int,
        window: tuple[int, int] = (-4, 4),
        ucap: int = 4,
        max_terms: int = 2,
    ) -> None:
        self.draw = draw
        self.dim = dim
        self.window = window
        self.ucap = ucap
        self.max_terms = max_terms

    def integer(self, lo: int, hi: int) -> int:
        return self.draw(st.integers(lo, hi))

    def permutation(self, n: int) -> list[int]:
        return self.draw(st.permutations(range(n)))

    def coefficient(self) -> int:
        return self.draw(st.sampled_from(COEFFICIENTS))

    def scalar(self) -> int:
        return self.draw(st.sampled_from(SCALARS))

    def sign(self) -> int:
        return self.draw(st.sampled_from((1, -1)))

    def exponent(self) -> tuple[int, ...]:
        return self.draw(exponents(self.dim, self.window))

    def nonconstant_exponent(self) -> tuple[int, ...]:
        return self.draw(nonconstant_exponents(self.dim, self.window))

    def monomial(self) -> LaurentPoly:
        return self.draw(monomials(self.dim, self.window))

    def laurent(self, terms: int | None = None) -> LaurentPoly:
        return self.draw(laurent_polys(self.dim, self.window, self.max_terms, terms))

    def indices(self, rank: int) -> tuple[int, ...]:
        return self.draw(index_sets(self.dim, rank))

    def rank(self, low: int = 0) -> int:
        return self.integer(low, self.dim)

    def multi_index(self, max_order: int = 1, nonzero: bool = True) -> tuple[int, ...]:
        return self.draw(multi_indices(self.dim, max_order, nonzero))

    def multivector(self, rank: int | None = None) -> MultiVector:
        """A homogeneous multivector of the given (or a random) rank."""
        rank = self.rank() if rank is None else rank
        return self.draw(multivectors(self.dim, rank, self.window, self.max_terms))

    def form(self, rank: int | None = None) -> DiffForm:
        rank = self.rank() if rank is None else rank
        return self.draw(forms(self.dim, rank, self.window, self.max_terms))

    def u_series(self, element: Callable[[], Any], ucap: int | None = None) -> USeries[Any]:
        """A u-series whose coefficients are drawn by `element` or left zero."""
        ucap = self.ucap if ucap is None else ucap
        coeffs = []
        for _ in range(ucap + 1):
            keep = self.draw(st.booleans())
            value = element()
            coeffs.append(value if keep else value * 0)
        return USeries(coeffs)

    def umultivector(self, rank: int | None = None) -> USeries[MultiVector]:
        """A u-series of multivectors, homogeneous of degree `rank - 1`."""
        rank = self.rank() if rank is None else rank
        return self.draw(
            u_series(multivectors(self.dim, rank, self.window, self.max_terms), self.ucap)
        )

    def uform(self, rank: int | None = None) -> USeries[DiffForm]:
        rank = self.rank() if rank is None else rank
        return self.draw(u_series(forms(self.dim, rank, self.window, self.max_terms), self.ucap))

    def uvtop(self, volume: VolumeForm, rank: int | None = None) -> USeries[VTop]:
        rank = self.rank() if rank is None else rank
        return self.draw(u_series(vtops(volume, rank, self.window, self.max_terms), self.ucap))

    def cochain(
        self,
        arity: int,
        max_order: int = 1,
        normalized: bool = True,
        top_valued: bool = False,
    ) -> MultiDiffOp:
        return self.draw(
            cochains(
                self.dim,
                arity,
                self.window,
                max_order,
                normalized,
                top_valued,
                self.max_terms,
            )
        )

    def chain(self, length: int) -> HochChain:
        return self.draw(chains(self.dim, length, self.window, self.max_terms))

    def uchain(self, length: int) -> USeries[HochChain]:
        return self.draw(u_series(chains(self.dim, length, self.window, self.max_terms), self.ucap))

    def eelement(self, rank: int, n: int, max_order: int = 1, normalized: bool = True) -> EElement:
        return self.draw(
            eelements(self.dim, rank, n, self.window, max_order, normalized, self.max_terms)
        )


def sampled(
    sample: Callable[[Sampler], tuple[Any, ...]],
    dim: int,
    window: tuple[int, int],
    ucap: int,
) -> SearchStrategy[tuple[Any, ...]]:
    """The strategy drawing `sample(Sampler(...))`: the arguments of one identity."""

    @st.composite
    def _arguments(draw: DrawFn) -> tuple[Any, ...]:
        return tuple(sample(Sampler(draw, dim, window, ucap)))

    return _arguments()
