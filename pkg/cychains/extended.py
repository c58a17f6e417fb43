"""The extended Hochschild complex of form-valued multidifferential operators.

An element is a finite sum of terms `Phi(a0, .., an) = c * d^alpha0 a0 .. d^alphan an dt_J`.
Slot `0` is where `a0` goes. The complex carries the cyclic-bar differential `b`
(no `a0 Phi(a1, ..)` term), the flat connection `nabla` given by the de Rham
differential on values, the cyclic operator `sigma` and Connes' `B` on the normalized
subcomplex.

Also the symbol complex of the first spectral-sequence page, with exact ranks, and the
projection onto the top form degree modulo `nabla`-exact elements.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import TYPE_CHECKING

from sympy import Matrix, Rational

from cychains.cartan import DiffForm, VTop, merge_indices
from cychains.core import LaurentPoly, USeries, format_terms, sign
from cychains.exceptions import (
    ArityMismatch,
    DimensionMismatch,
    InputError,
    NormalizationError,
    WindowTooSmall,
)
from cychains.hochschild import HochChain, MultiDiffOp, hkr_cochain

if TYPE_CHECKING:  # pragma: no cover
    from typing import Iterable, Iterator, Mapping, Sequence

    from cychains.core import Scalar

    Indices = tuple[int, ...]
    Slots = tuple[tuple[int, ...], ...]
    Key = tuple[Indices, Slots]

LOGGER = logging.getLogger(__name__)


class EElement:
    """A form-valued multidifferential operator with an `a0`-slot.

    Terms map `(J, slots)` to a Laurent coefficient, where `J` is the form index tuple
    and `slots` holds one multi-index per argument `a0, .., an`.
    """

    __slots__ = ("_terms", "dim")

    def __init__(self, terms: Mapping[Key, LaurentPoly], dim: int) -> None:
        cleaned: dict[Key, LaurentPoly] = {}
        for (indices, slots), coefficient in terms.items():
            indices = tuple(indices)
            slots = tuple(tuple(int(_) for _ in alpha) for alpha in slots)
            if list(indices) != sorted(set(indices)) or any(
                not 1 <= _ <= dim for _ in indices
            ):
                raise InputError(
                    f"Form index tuple {indices} must be strictly increasing within 1..{dim}"
                )
            if not slots:
                raise ArityMismatch("An extended element needs at least the a0 slot")
            if any(len(alpha) != dim or min(alpha) < 0 for alpha in slots):
                raise InputError(f"Invalid multi-indices {slots} for a {dim}-torus")
            if coefficient.dim != dim:
                raise DimensionMismatch(
                    f"Coefficient in {coefficient.dim} variables on a {dim}-torus"
                )
            key = (indices, slots)
            total = cleaned.get(key, LaurentPoly.zero(dim)) + coefficient
            if total.is_zero():
                cleaned.pop(key, None)
            else:
                cleaned[key] = total
        self._terms = cleaned
        self.dim = dim

    @classmethod
    def zero(cls, dim: int) -> EElement:
        return cls({}, dim)

    @classmethod
    def from_operator(cls, indices: Sequence[int], operator: MultiDiffOp) -> EElement:
        """`operator(a0, .., an) dt_J` for a scalar operator with at least one slot."""
        return cls(
            {(tuple(indices), slots): c for slots, c in operator.terms.items()},
            operator.dim,
        )

    @property
    def terms(self) -> Mapping[Key, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, LaurentPoly]]:
        for key in sorted(self._terms, key=lambda _: (len(_[1]), len(_[0]), _)):
            yield key, self._terms[key]

    def bidegrees(self) -> set[tuple[int, int]]:
        """`(form rank p, n)` for every term, with `n + 1` slots."""
        return {(len(indices), len(slots) - 1) for indices, slots in self._terms}

    def homogeneous(self, rank: int | None = None, n: int | None = None) -> EElement:
        return EElement(
            {
                (indices, slots): c
                for (indices, slots), c in self._terms.items()
                if (rank is None or len(indices) == rank)
                and (n is None or len(slots) == n + 1)
            },
            self.dim,
        )

    def operators(self) -> Iterator[tuple[Indices, MultiDiffOp]]:
        """Split into `(J, scalar operator)` pieces of fixed form index and slot count."""
        groups: dict[tuple[Indices, int], dict[Slots, LaurentPoly]] = {}
        for (indices, slots), coefficient in self._terms.items():
            groups.setdefault((indices, len(slots)), {})[slots] = coefficient
        for (indices, count), terms in sorted(groups.items()):
            yield indices, MultiDiffOp(terms, count, self.dim)

    def is_zero(self) -> bool:
        return not self._terms

    def is_normalized(self) -> bool:
        """Whether the element vanishes when a constant is inserted in any slot `>= 1`."""
        return all(all(any(alpha) for alpha in slots[1:]) for _, slots in self._terms)

    def evaluate(self, *args: LaurentPoly) -> DiffForm:
        """The form `Phi(a0, .., an)`; terms with another slot count do not contribute."""
        components: dict[Indices, LaurentPoly] = {}
        for indices, operator in self.operators():
            if operator.arity == len(args):
                value = operator.evaluate(*args)
                components[indices] = components.get(
                    indices, LaurentPoly.zero(self.dim)
                ) + value
        return DiffForm(components, self.dim)

    def evaluate_chain(self, c: HochChain) -> DiffForm:
        """Linear extension of `evaluate` to chains."""
        result = DiffForm.zero(self.dim)
        for tensor, coefficient in c.items():
            args = [LaurentPoly.monomial(exponent) for exponent in tensor]
            result = result + self.evaluate(*args) * coefficient
        return result

    def __add__(self, other: EElement) -> EElement:
        if other.dim != self.dim:
            raise DimensionMismatch("Elements live on tori of different dimensions")
        terms = dict(self._terms)
        for key, coefficient in other._terms.items():
            terms[key] = terms.get(key, LaurentPoly.zero(self.dim)) + coefficient
        return EElement(terms, self.dim)

    def __neg__(self) -> EElement:
        return self * -1

    def __sub__(self, other: EElement) -> EElement:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | Scalar) -> EElement:
        return EElement({k: c * other for k, c in self._terms.items()}, self.dim)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EElement):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self) -> str:
        terms = []
        for (indices, slots), coefficient in self.items():
            for exponent, value in coefficient.items():
                parts = []
                if any(exponent):
                    parts.append(f"t^[{','.join(map(str, exponent))}]")
                parts.append(f"D[{' | '.join(','.join(map(str, a)) for a in slots)}]")
                if indices:
                    parts.append(f"({'^'.join(f'dt{_}' for _ in indices)})")
                terms.append((value, " * ".join(parts)))
        return format_terms(terms)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.__str__()!r}, dim={self.dim})"


def _collect(pieces: Iterable[tuple[Indices, MultiDiffOp]], dim: int) -> EElement:
    result = EElement.zero(dim)
    for indices, operator in pieces:
        result = result + EElement.from_operator(indices, operator)
    return result


def _rotate(operator: MultiDiffOp, shift: int) -> MultiDiffOp:
    """`(rotated)(a0, .., an) = operator(a_shift, .., a_n, a_0, .., a_(shift-1))`."""
    count = operator.arity
    return MultiDiffOp(
        {
            tuple(slots[(k - shift) % count] for k in range(count)): c
            for slots, c in operator.terms.items()
        },
        count,
        operator.dim,
    )


def extended_b(e: EElement, *, wrap_sign: int = 1) -> EElement:
    """`(b Phi)(a0, .., an) = sum_(i<n) (-1)^i Phi(.., a_i a_(i+1), ..) + (-1)^n Phi(a_n a0, ..)`.

    `wrap_sign=-1` flips the sign of the wrap-around term.
    """
    m0 = MultiDiffOp.product(e.dim)
    pieces = []
    for indices, operator in e.operators():
        n = operator.arity
        result = MultiDiffOp.zero(n + 1, e.dim)
        for i in range(n):
            result = result + operator.insert(i + 1, m0) * sign(i)
        # Phi(a_n a_0, a_1, ..): merge into slot 0, then move a_n's slot to the end.
        result = result + _rotate(operator.insert(1, m0), -1) * (sign(n) * wrap_sign)
        pieces.append((indices, result))
    return _collect(pieces, e.dim)


def extended_nabla(e: EElement) -> EElement:
    """`(nabla Phi)(a0, .., an) = (-1)^n d(Phi(a0, .., an))`."""
    dim = e.dim
    terms: dict[Key, LaurentPoly] = {}

    def _add(key: Key, value: LaurentPoly) -> None:
        terms[key] = terms.get(key, LaurentPoly.zero(dim)) + value

    for (indices, slots), coefficient in e._terms.items():
        n = len(slots) - 1
        for axis in range(1, dim + 1):
            factor, merged = merge_indices((axis,), indices)
            if not factor:
                continue
            factor *= sign(n)
            _add((merged, slots), coefficient.partial(axis) * factor)
            for k in range(len(slots)):
                bumped = list(slots)
                bumped[k] = tuple(
                    a + (1 if i == axis - 1 else 0) for i, a in enumerate(slots[k])
                )
                _add((merged, tuple(bumped)), coefficient * factor)
    return EElement(terms, dim)


def cyclic_sigma(e: EElement) -> EElement:
    """`(sigma Phi)(a0, .., an) = (-1)^n Phi(a1, .., an, a0)`."""
    return _collect(
        (
            (indices, _rotate(operator, 1) * sign(operator.arity - 1))
            for indices, operator in e.operators()
        ),
        e.dim,
    )


def cyclic_symmetrize(e: EElement) -> EElement:
    """`N Phi = sum_(j=0..n) sigma^j Phi`, slot count by slot count."""
    result = EElement.zero(e.dim)
    for count in sorted({len(slots) for _, slots in e._terms}):
        part = e.homogeneous(n=count - 1)
        power = part
        for _ in range(count):
            result = result + power
            power = cyclic_sigma(power)
    return result


def insert_unit(e: EElement) -> EElement:
    """`Phi -> ((a0, .., a_(n-1)) -> Phi(1, a0, .., a_(n-1)))`."""
    terms: dict[Key, LaurentPoly] = {}
    for (indices, slots), coefficient in e._terms.items():
        if len(slots) < 2 or any(slots[0]):
            continue
        key = (indices, slots[1:])
        terms[key] = terms.get(key, LaurentPoly.zero(e.dim)) + coefficient
    return EElement(terms, e.dim)


def connes_B_extended(e: EElement) -> EElement:
    """Connes' `B`: insert the unit into slot 0, then symmetrize cyclically."""
    if not e.is_normalized():
        raise NormalizationError(
            "Connes' B is defined on the normalized extended complex only"
        )
    return cyclic_symmetrize(insert_unit(e))


def extended_total_differential(
    s: USeries[EElement], with_nabla: bool = True
) -> USeries[EElement]:
    """`b + nabla + u B` (or `b + u B`) on a u-series of normalized elements."""
    result = s.map(extended_b)
    if with_nabla:
        result = result + s.map(extended_nabla)
    return result + s.map(connes_B_extended).times_u()


def embed_cochain(phi: MultiDiffOp) -> EElement:
    """`Phi -> ((a0, .., an) -> a0 Phi(a1, .., an))` for top-form-valued `Phi`."""
    if not phi.top_valued:
        raise ArityMismatch("Only top-form-valued cochains embed into the extended complex")
    zero = (0,) * phi.dim
    full = tuple(range(1, phi.dim + 1))
    return EElement(
        {(full, (zero, *slots)): c for slots, c in phi.terms.items()}, phi.dim
    )


def hkr_vt(x: VTop) -> MultiDiffOp:
    """`nu Omega -> ((a1, .., ak) -> iota_nu(da1 ^ .. ^ dak) Omega)` for rank-k `nu`."""
    cochain = hkr_cochain(x.mv) * x.vol.density()
    return MultiDiffOp(cochain.terms, cochain.arity, cochain.dim, top_valued=True)


class SymbolElement:
    """An element of `wedge^p (Q^d)^* (x) S^q (Q^d)` in coordinates.

    Terms map `(I, m)` to a rational, for the basis element `dx_I (x) x^m` with `I`
    strictly increasing and `m` a non-negative exponent vector.
    """

    __slots__ = ("_terms", "dim")

    def __init__(self, terms: Mapping[tuple[Indices, Sequence[int]], Scalar], dim: int) -> None:
        cleaned: dict[tuple[Indices, tuple[int, ...]], Fraction] = {}
        for (indices, monomial), value in terms.items():
            indices, monomial = tuple(indices), tuple(monomial)
            if list(indices) != sorted(set(indices)) or any(
                not 1 <= _ <= dim for _ in indices
            ):
                raise InputError(f"Invalid form indices {indices} for dimension {dim}")
            if len(monomial) != dim or min(monomial, default=0) < 0:
                raise InputError(f"Invalid symbol exponent {monomial} for dimension {dim}")
            total = cleaned.get((indices, monomial), Fraction(0)) + Fraction(value)
            if total:
                cleaned[(indices, monomial)] = total
            else:
                cleaned.pop((indices, monomial), None)
        self._terms = cleaned
        self.dim = dim

    @property
    def terms(self) -> Mapping[tuple[Indices, tuple[int, ...]], Fraction]:
        return dict(self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(i), sum(m)) for i, m in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: SymbolElement) -> SymbolElement:
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + value
        return SymbolElement(terms, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolElement):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._terms.items()))
        return f"{type(self).__name__}({{{body}}}, dim={self.dim})"


def koszul_symbol_d0(s: SymbolElement) -> SymbolElement:
    """`d0 = sum_i (dx_i ^) (x) (x_i .)`, of bidegree `(1, 1)`."""
    terms: dict[tuple[Indices, tuple[int, ...]], Fraction] = {}
    for (indices, monomial), value in s._terms.items():
        for axis in range(1, s.dim + 1):
            factor, merged = merge_indices((axis,), indices)
            if not factor:
                continue
            bumped = tuple(m + (1 if i == axis - 1 else 0) for i, m in enumerate(monomial))
            key = (merged, bumped)
            terms[key] = terms.get(key, Fraction(0)) + value * factor
    return SymbolElement(terms, s.dim)


def symbol_basis(dim: int, p: int, q: int) -> list[tuple[Indices, tuple[int, ...]]]:
    """Basis `dx_I (x) x^m` of bidegree `(p, q)` in a fixed order."""
    if p < 0 or q < 0 or p > dim:
        return []
    monomials = [
        m for m in product(range(q + 1), repeat=dim) if sum(m) == q
    ]
    return [
        (indices, monomial)
        for indices in combinations(range(1, dim + 1), p)
        for monomial in sorted(monomials, reverse=True)
    ]


def d0_rank(dim: int, p: int, q: int) -> int:
    source = symbol_basis(dim, p, q)
    target = symbol_basis(dim, p + 1, q + 1)
    if not source or not target:
        return 0
    position = {key: row for row, key in enumerate(target)}
    matrix = Matrix.zeros(len(target), len(source))
    for column, key in enumerate(source):
        image = koszul_symbol_d0(SymbolElement({key: 1}, dim))
        for target_key, value in image.terms.items():
            matrix[position[target_key], column] = Rational(value.numerator, value.denominator)
    return matrix.rank()


@dataclass(frozen=True)
class KoszulRow:
    """Cohomology of the symbol complex at one spot of the line `q - p = c`."""

    d: int
    c: int
    p: int
    q: int
    dim_space: int
    dim_cohomology: int

    def as_dict(self) -> dict[str, int]:
        return {"d": self.d, "c": self.c, "p": self.p, "dim_cohomology": self.dim_cohomology}


def koszul_line_cohomology(d: int, c: int, qmax: int | None = None) -> list[KoszulRow]:
    """Cohomology dimensions of `d0` on the line `q - p = c`, for `p = max(0, -c)..d`.

    `qmax` optionally caps the symbol degree `q` considered.
    """
    if d < 1:
        raise InputError(f"Dimension must be positive, got {d}")
    rows = []
    for p in range(max(0, -c), d + 1):
        q = p + c
        if qmax is not None and q > qmax:
            break
        space = len(symbol_basis(d, p, q))
        rank_out = d0_rank(d, p, q)
        rank_in = d0_rank(d, p - 1, q - 1)
        rows.append(KoszulRow(d, c, p, q, space, space - rank_out - rank_in))
    LOGGER.debug("Koszul line d=%d c=%d: %s", d, c, rows)
    return rows


@dataclass(frozen=True)
class ProjectionWindow:
    """Finite window for quotients: coefficient exponents in `[exp_lo, exp_hi]` per
    variable and per-slot derivative order at most `max_order`."""

    exp_lo: int = -2
    exp_hi: int = 2
    max_order: int = 1

    def __post_init__(self) -> None:
        if self.exp_lo > self.exp_hi or self.max_order < 0:
            raise InputError(f"Invalid projection window {self}")

    def exponents(self, dim: int) -> Iterator[tuple[int, ...]]:
        return product(range(self.exp_lo, self.exp_hi + 1), repeat=dim)

    def multi_indices(self, dim: int) -> list[tuple[int, ...]]:
        return [
            m for m in product(range(self.max_order + 1), repeat=dim)
            if sum(m) <= self.max_order
        ]

    def contains(self, exponent: Sequence[int], slots: Slots) -> bool:
        return all(self.exp_lo <= _ <= self.exp_hi for _ in exponent) and all(
            sum(alpha) <= self.max_order for alpha in slots
        )


def project_top_mod_exact(e: EElement, window: ProjectionWindow) -> EElement:
    """Class of the top form-degree part of `e` modulo `nabla` of rank `d - 1` elements.

    Preimages range over monomial elements inside `window`; the result is the normal
    form of the top part with respect to the reduced row echelon form of their images.
    """
    dim = e.dim
    top = e.homogeneous(rank=dim)
    if top.is_zero():
        return top
    coordinates: dict[tuple[tuple[int, ...], Slots], Fraction] = {}
    for (_, slots), coefficient in top._terms.items():
        for exponent, value in coefficient.items():
            if not window.contains(exponent, slots):
                raise WindowTooSmall(
                    f"Term t^{list(exponent)} D{list(slots)} lies outside {window}"
                )
            coordinates[(exponent, slots)] = value
    counts = {len(slots) for _, slots in top._terms}
    images: list[dict[tuple[tuple[int, ...], Slots], Fraction]] = []
    for count in sorted(counts):
        for indices in combinations(range(1, dim + 1), dim - 1):
            for slots in product(window.multi_indices(dim), repeat=count):
                for exponent in window.exponents(dim):
                    source = EElement(
                        {(indices, slots): LaurentPoly.monomial(exponent)}, dim
                    )
                    image: dict[tuple[tuple[int, ...], Slots], Fraction] = {}
                    for (_, image_slots), value in extended_nabla(source)._terms.items():
                        for image_exponent, weight in value.items():
                            image[(image_exponent, image_slots)] = weight
                    if image:
                        images.append(image)
    keys = sorted({k for image in images for k in image} | set(coordinates))
    column = {key: i for i, key in enumerate(keys)}
    matrix = Matrix.zeros(len(images), len(keys))
    for row, image in enumerate(images):
        for key, value in image.items():
            matrix[row, column[key]] = Rational(value.numerator, value.denominator)
    reduced, pivots = matrix.rref()
    vector = [Rational(0)] * len(keys)
    for key, value in coordinates.items():
        vector[column[key]] = Rational(value.numerator, value.denominator)
    for row, pivot in enumerate(pivots):
        factor = vector[pivot]
        if factor != 0:
            for j in range(len(keys)):
                vector[j] -= factor * reduced[row, j]
    full = tuple(range(1, dim + 1))
    terms: dict[Key, LaurentPoly] = {}
    for key, value in zip(keys, vector):
        if value != 0:
            exponent, slots = key
            monomial = LaurentPoly.monomial(exponent, Fraction(int(value.p), int(value.q)))
            terms[(full, slots)] = terms.get((full, slots), LaurentPoly.zero(dim)) + monomial
    LOGGER.debug(
        "Projected %d top terms against %d exact images (rank %d)",
        len(coordinates),
        len(images),
        len(pivots),
    )
    return EElement(terms, dim)
