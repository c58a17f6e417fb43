"""Hochschild cochains and chains of the Laurent algebra.

Normalized multidifferential cochains form a dgla under the Gerstenhaber bracket with
differential `[m0, .]`. Normalized chains `a0 (x) a1 (x) .. (x) an` carry the boundary
`b_H`, the action of cochains, Connes' `B` and the map to differential forms.

Chains are stored in the monomial basis. Slots `1..n` hold the representative of
`A / Q 1` with the constant term stripped, so any tensor with a constant monomial in
a slot `>= 1` is dropped on construction.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import TYPE_CHECKING

from cychains.cartan import (
    DiffForm,
    DiffOp,
    MultiVector,
    contract_basis,
    de_rham,
    form_wedge,
    merge_indices,
)
from cychains.core import (
    LaurentPoly,
    USeries,
    as_rational,
    format_monomial,
    format_terms,
    multinomial_splits,
    sign,
)
from cychains.exceptions import ArityMismatch, DimensionMismatch, InputError

if TYPE_CHECKING:  # pragma: no cover
    from typing import Iterator, Mapping, Sequence

    from cychains.core import Scalar

    MultiIndex = tuple[int, ...]
    Slots = tuple[MultiIndex, ...]
    Tensor = tuple[tuple[int, ...], ...]

LOGGER = logging.getLogger(__name__)


class MultiDiffOp:
    """A multidifferential operator `(a1, .., an) -> sum c * d^alpha1 a1 ... d^alphan an`.

    Terms map a tuple of `arity` multi-indices to a Laurent coefficient. With
    `top_valued`, values are densities with respect to `dt1^..^dtd`, i.e. the operator
    is a cochain with values in top forms.
    """

    __slots__ = ("_terms", "arity", "dim", "top_valued")

    def __init__(
        self,
        terms: Mapping[Sequence[Sequence[int]], LaurentPoly],
        arity: int,
        dim: int,
        top_valued: bool = False,
    ) -> None:
        if arity < 0:
            raise ArityMismatch(f"Arity must be non-negative, got {arity}")
        cleaned: dict[Slots, LaurentPoly] = {}
        for slots, coefficient in terms.items():
            slots = tuple(tuple(int(_) for _ in alpha) for alpha in slots)
            if len(slots) != arity:
                raise ArityMismatch(
                    f"Term with {len(slots)} slots in an arity-{arity} operator"
                )
            if any(len(alpha) != dim or min(alpha) < 0 for alpha in slots):
                raise InputError(f"Invalid multi-indices {slots} for a {dim}-torus")
            if coefficient.dim != dim:
                raise DimensionMismatch(
                    f"Coefficient in {coefficient.dim} variables on a {dim}-torus"
                )
            total = cleaned.get(slots, LaurentPoly.zero(dim)) + coefficient
            if total.is_zero():
                cleaned.pop(slots, None)
            else:
                cleaned[slots] = total
        self._terms = cleaned
        self.arity = arity
        self.dim = dim
        self.top_valued = top_valued

    @classmethod
    def zero(cls, arity: int, dim: int, top_valued: bool = False) -> MultiDiffOp:
        return cls({}, arity, dim, top_valued)

    @classmethod
    def function(cls, f: LaurentPoly, top_valued: bool = False) -> MultiDiffOp:
        """A 0-cochain."""
        return cls({(): f}, 0, f.dim, top_valued)

    @classmethod
    def product(cls, dim: int) -> MultiDiffOp:
        """`m0`, the commutative multiplication of functions."""
        zero = (0,) * dim
        return cls({(zero, zero): LaurentPoly.one(dim)}, 2, dim)

    @classmethod
    def derivation(cls, axis: int, dim: int, coefficient: LaurentPoly | None = None) -> MultiDiffOp:
        """`f d_axis` as a 1-cochain."""
        multi_index = [0] * dim
        multi_index[axis - 1] = 1
        coefficient = LaurentPoly.one(dim) if coefficient is None else coefficient
        return cls({(tuple(multi_index),): coefficient}, 1, dim)

    @classmethod
    def from_diffop(cls, operator: DiffOp) -> MultiDiffOp:
        return cls({(alpha,): c for alpha, c in operator.terms.items()}, 1, operator.dim)

    def to_diffop(self) -> DiffOp:
        if self.arity != 1:
            raise ArityMismatch(
                f"Only 1-cochains are differential operators, got arity {self.arity}"
            )
        return DiffOp({slots[0]: c for slots, c in self._terms.items()}, self.dim)

    @property
    def terms(self) -> Mapping[Slots, LaurentPoly]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        """Shifted degree `arity - 1`."""
        return self.arity - 1

    def items(self) -> Iterator[tuple[Slots, LaurentPoly]]:
        for slots in sorted(self._terms):
            yield slots, self._terms[slots]

    def is_zero(self) -> bool:
        return not self._terms

    def is_normalized(self) -> bool:
        """Whether every term differentiates every slot (vanishes on constants)."""
        return all(all(any(alpha) for alpha in slots) for slots in self._terms)

    def evaluate(self, *args: LaurentPoly) -> LaurentPoly:
        """Value on `args`; a density w.r.t. `dt1^..^dtd` if top-valued."""
        if len(args) != self.arity:
            raise ArityMismatch(
                f"Arity-{self.arity} operator evaluated on {len(args)} arguments"
            )
        result = LaurentPoly.zero(self.dim)
        for slots, coefficient in self._terms.items():
            term = coefficient
            for alpha, argument in zip(slots, args):
                term = term * argument.derivative(alpha)
            result = result + term
        return result

    __call__ = evaluate

    def insert(self, position: int, inner: MultiDiffOp) -> MultiDiffOp:
        """`phi(a1, .., inner(a_position, ..), ..)`, expanded by the Leibniz rule."""
        if inner.dim != self.dim:
            raise DimensionMismatch("Cochains live on tori of different dimensions")
        if not 1 <= position <= self.arity:
            raise ArityMismatch(
                f"Cannot insert at position {position} of an arity-{self.arity} operator"
            )
        width = inner.arity
        terms: dict[Slots, LaurentPoly] = {}
        for outer_slots, c in self._terms.items():
            before = outer_slots[: position - 1]
            alpha = outer_slots[position - 1]
            after = outer_slots[position:]
            for inner_slots, e in inner._terms.items():
                for weight, betas in multinomial_splits(alpha, width + 1):
                    coefficient = c * e.derivative(betas[0]) * weight
                    middle = tuple(
                        tuple(x + y for x, y in zip(beta, gamma))
                        for beta, gamma in zip(betas[1:], inner_slots)
                    )
                    key = before + middle + after
                    terms[key] = terms.get(key, LaurentPoly.zero(self.dim)) + coefficient
        return MultiDiffOp(
            terms,
            self.arity + width - 1,
            self.dim,
            self.top_valued or inner.top_valued,
        )

    def _check(self, other: MultiDiffOp) -> None:
        if other.dim != self.dim:
            raise DimensionMismatch("Cochains live on tori of different dimensions")
        if (other.arity, other.top_valued) != (self.arity, self.top_valued):
            raise ArityMismatch(
                "Cannot add cochains of different arity or value kind: "
                f"({self.arity}, top={self.top_valued}) and "
                f"({other.arity}, top={other.top_valued})"
            )

    def __add__(self, other: MultiDiffOp) -> MultiDiffOp:
        self._check(other)
        terms = dict(self._terms)
        for slots, coefficient in other._terms.items():
            terms[slots] = terms.get(slots, LaurentPoly.zero(self.dim)) + coefficient
        return MultiDiffOp(terms, self.arity, self.dim, self.top_valued)

    def __neg__(self) -> MultiDiffOp:
        return self * -1

    def __sub__(self, other: MultiDiffOp) -> MultiDiffOp:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | Scalar) -> MultiDiffOp:
        return MultiDiffOp(
            {slots: c * other for slots, c in self._terms.items()},
            self.arity,
            self.dim,
            self.top_valued,
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDiffOp):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.dim == other.dim
        return (
            self.dim == other.dim
            and self.arity == other.arity
            and self.top_valued == other.top_valued
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.arity, self.top_valued, frozenset(self._terms.items())))

    def __str__(self) -> str:
        terms = []
        for slots, coefficient in self.items():
            for exponent, value in coefficient.items():
                parts = []
                if any(exponent):
                    parts.append(f"t^[{','.join(map(str, exponent))}]")
                if slots:
                    body = " | ".join(",".join(map(str, alpha)) for alpha in slots)
                    parts.append(f"D[{body}]")
                if self.top_valued:
                    parts.append(f"({'^'.join(f'dt{_}' for _ in range(1, self.dim + 1))})")
                terms.append((value, " * ".join(parts)))
        return format_terms(terms)

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}({self.__str__()!r}, arity={self.arity}, "
            f"dim={self.dim})"
        )


def pre_lie(phi: MultiDiffOp, psi: MultiDiffOp) -> MultiDiffOp:
    """`phi o psi = sum_i (-1)^((i-1)(q-1)) phi(.., psi(a_i, ..), ..)`."""
    q = psi.arity
    result = MultiDiffOp.zero(max(phi.arity + q - 1, 0), phi.dim)
    for position in range(1, phi.arity + 1):
        result = result + phi.insert(position, psi) * sign((position - 1) * (q - 1))
    return result


def gerstenhaber(phi: MultiDiffOp, psi: MultiDiffOp) -> MultiDiffOp:
    """Gerstenhaber bracket `phi o psi - (-1)^((p-1)(q-1)) psi o phi`."""
    if phi.top_valued or psi.top_valued:
        raise ArityMismatch("The Gerstenhaber bracket takes scalar-valued cochains")
    if phi.dim != psi.dim:
        raise DimensionMismatch("Cochains live on tori of different dimensions")
    return pre_lie(phi, psi) - pre_lie(psi, phi) * sign(phi.degree * psi.degree)


def cochain_differential(phi: MultiDiffOp) -> MultiDiffOp:
    """`b^H phi = [m0, phi]`."""
    return gerstenhaber(MultiDiffOp.product(phi.dim), phi)


def valued_coboundary(phi: MultiDiffOp) -> MultiDiffOp:
    """Hochschild coboundary with values in a bimodule (`A` or top forms).

    `a1 phi(a2, ..) + sum_i (-1)^i phi(.., a_i a_(i+1), ..) + (-1)^(q+1) phi(..) a_(q+1)`.
    On scalar cochains it agrees with `b^H` up to the sign `(-1)^(q-1)`.
    """
    m0 = MultiDiffOp.product(phi.dim)
    q = phi.arity
    result = m0.insert(2, phi)
    for position in range(1, q + 1):
        result = result + phi.insert(position, m0) * sign(position)
    return result + m0.insert(1, phi) * sign(q + 1)


def _monomial_tensor(
    factors: Sequence[LaurentPoly],
) -> Iterator[tuple[Tensor, Fraction]]:
    for picks in product(*(tuple(_.items()) for _ in factors)):
        coefficient = Fraction(1)
        for _, value in picks:
            coefficient *= value
        yield tuple(exponent for exponent, _ in picks), coefficient


class HochChain:
    """A normalized Hochschild chain: a finite sum of tensors `a0 (x) .. (x) an`.

    Terms map a tuple of `n + 1` exponent vectors to a rational coefficient. Chains of
    several lengths may be summed.
    """

    __slots__ = ("_terms", "dim")

    def __init__(self, terms: Mapping[Sequence[Sequence[int]], Scalar], dim: int) -> None:
        cleaned: dict[Tensor, Fraction] = {}
        for tensor, coefficient in terms.items():
            tensor = tuple(tuple(int(_) for _ in exponent) for exponent in tensor)
            if not tensor:
                raise InputError("A chain tensor needs at least the a0 slot")
            if any(len(_) != dim for _ in tensor):
                raise DimensionMismatch(f"Exponent vectors in {tensor} must have length {dim}")
            if any(not any(_) for _ in tensor[1:]):
                continue
            value = cleaned.get(tensor, Fraction(0)) + as_rational(coefficient)
            if value:
                cleaned[tensor] = value
            else:
                cleaned.pop(tensor, None)
        self._terms = cleaned
        self.dim = dim

    @classmethod
    def zero(cls, dim: int) -> HochChain:
        return cls({}, dim)

    @classmethod
    def tensor(cls, *factors: LaurentPoly) -> HochChain:
        """`a0 (x) a1 (x) .. (x) an`, expanded multilinearly and normalized."""
        if not factors:
            raise InputError("A chain tensor needs at least the a0 slot")
        dim = factors[0].dim
        if any(_.dim != dim for _ in factors):
            raise DimensionMismatch("Tensor factors live on tori of different dimensions")
        terms: dict[Tensor, Fraction] = {}
        for tensor, coefficient in _monomial_tensor(factors):
            terms[tensor] = terms.get(tensor, Fraction(0)) + coefficient
        return cls(terms, dim)

    @property
    def terms(self) -> Mapping[Tensor, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Tensor, Fraction]]:
        for tensor in sorted(self._terms, key=_tensor_order):
            yield tensor, self._terms[tensor]

    def lengths(self) -> set[int]:
        """The chain lengths `n` present (tensors of `n + 1` factors)."""
        return {len(_) - 1 for _ in self._terms}

    def homogeneous(self, length: int) -> HochChain:
        return HochChain(
            {k: v for k, v in self._terms.items() if len(k) == length + 1}, self.dim
        )

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: HochChain) -> HochChain:
        if other.dim != self.dim:
            raise DimensionMismatch("Chains live on tori of different dimensions")
        terms = dict(self._terms)
        for tensor, coefficient in other._terms.items():
            terms[tensor] = terms.get(tensor, Fraction(0)) + coefficient
        return HochChain(terms, self.dim)

    def __neg__(self) -> HochChain:
        return self * -1

    def __sub__(self, other: HochChain) -> HochChain:
        return self + (-other)

    def __mul__(self, other: Scalar) -> HochChain:
        factor = as_rational(other)
        return HochChain({k: v * factor for k, v in self._terms.items()}, self.dim)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HochChain):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_terms(
            (
                (coefficient, " (x) ".join(format_monomial(_) for _ in tensor))
                for tensor, coefficient in self.items()
            ),
            omit_unit=True,
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.__str__()!r}, dim={self.dim})"


def _tensor_order(tensor: Tensor) -> tuple:
    return len(tensor), tuple(tuple(-e for e in exponent) for exponent in tensor)


def _add_exponents(*exponents: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(_) for _ in zip(*exponents))


def chain_boundary(c: HochChain) -> HochChain:
    """`b_H`: adjacent products with alternating signs and the wrap-around term."""
    terms: dict[Tensor, Fraction] = {}

    def _add(tensor: Tensor, value: Fraction) -> None:
        terms[tensor] = terms.get(tensor, Fraction(0)) + value

    for tensor, coefficient in c._terms.items():
        n = len(tensor) - 1
        for i in range(n):
            merged = tensor[:i] + (_add_exponents(tensor[i], tensor[i + 1]),) + tensor[i + 2 :]
            _add(merged, coefficient * sign(i))
        if n:
            _add(
                (_add_exponents(tensor[n], tensor[0]),) + tensor[1:n],
                coefficient * sign(n),
            )
    return HochChain(terms, c.dim)


def _place(
    terms: dict[Tensor, Fraction],
    before: Sequence[tuple[int, ...]],
    value: LaurentPoly,
    after: Sequence[tuple[int, ...]],
    coefficient: Fraction,
) -> None:
    for exponent, weight in value.items():
        tensor = (*before, exponent, *after)
        terms[tensor] = terms.get(tensor, Fraction(0)) + coefficient * weight


def cochain_action(operator: MultiDiffOp, c: HochChain) -> HochChain:
    """`L_D c`, the action of a scalar-valued cochain on chains.

    The first sum places `D` on a cyclic window through `a0` into slot 0, the second
    inserts it between interior slots. Windows wider than the chain contribute nothing.
    """
    if operator.top_valued:
        raise ArityMismatch("Only scalar-valued cochains act on chains")
    if operator.dim != c.dim:
        raise DimensionMismatch("Cochain and chain live on tori of different dimensions")
    arity = operator.arity
    terms: dict[Tensor, Fraction] = {}
    for tensor, coefficient in c._terms.items():
        n = len(tensor) - 1
        monomials = [LaurentPoly.monomial(_) for _ in tensor]
        for j in range(max(n - arity + 1, 0), n + 1):
            if arity > n + 1:
                break
            args = [monomials[(j + 1 + k) % (n + 1)] for k in range(arity)]
            value = operator.evaluate(*args)
            _place(
                terms,
                (),
                value,
                tensor[arity + j - n : j + 1],
                coefficient * sign(n * (j + 1)),
            )
        for i in range(0, n - arity + 1):
            value = operator.evaluate(*monomials[i + 1 : i + 1 + arity])
            _place(
                terms,
                tensor[: i + 1],
                value,
                tensor[i + 1 + arity :],
                coefficient * sign((arity - 1) * (i + 1)),
            )
    return HochChain(terms, c.dim)


def connes_B(c: HochChain) -> HochChain:
    """Connes' `B`: `sum_j (-1)^(jn) 1 (x) a_j (x) .. (x) a_n (x) a_0 (x) .. (x) a_(j-1)`."""
    one = (0,) * c.dim
    terms: dict[Tensor, Fraction] = {}
    for tensor, coefficient in c._terms.items():
        n = len(tensor) - 1
        for j in range(n + 1):
            rotated = (one, *tensor[j:], *tensor[:j])
            terms[rotated] = terms.get(rotated, Fraction(0)) + coefficient * sign(j * n)
    return HochChain(terms, c.dim)


def negative_cyclic_differential(s: USeries[HochChain]) -> USeries[HochChain]:
    """`b_H + u B` on a u-series of chains."""
    return s.map(chain_boundary) + s.map(connes_B).times_u()


def hkr_chains(c: HochChain) -> DiffForm:
    """`a0 (x) a1 (x) .. (x) an -> (1/n!) a0 da1 ^ .. ^ dan`."""
    result = DiffForm.zero(c.dim)
    for tensor, coefficient in c._terms.items():
        n = len(tensor) - 1
        form = DiffForm.function(LaurentPoly.monomial(tensor[0], coefficient / factorial(n)))
        for exponent in tensor[1:]:
            form = form_wedge(form, de_rham(DiffForm.function(LaurentPoly.monomial(exponent))))
        result = result + form
    return result


def hkr_cochain(gamma: MultiVector) -> MultiDiffOp:
    """Rank-k multivector `f d_I` to the multiderivation `(a1, .., ak) -> f <d_I, da1 ^ .. ^ dak>`.

    The antisymmetrized evaluation used to let multivectors act on chains through
    `cochain_action`.
    """
    ranks = gamma.ranks()
    if not ranks:
        return MultiDiffOp.zero(0, gamma.dim)
    if len(ranks) > 1:
        raise InputError(
            f"The HKR map takes rank-homogeneous multivectors, got ranks {sorted(ranks)}"
        )
    rank = ranks.pop()
    terms: dict[Slots, LaurentPoly] = {}
    for indices, coefficient in gamma.items():
        for order in permutations(indices):
            ordering_sign, _ = _sort_sign(order)
            contraction_sign, _ = contract_basis(indices, indices)
            slots = tuple(
                tuple(1 if axis == j else 0 for axis in range(1, gamma.dim + 1))
                for j in order
            )
            terms[slots] = terms.get(slots, LaurentPoly.zero(gamma.dim)) + coefficient * (
                ordering_sign * contraction_sign
            )
    return MultiDiffOp(terms, rank, gamma.dim)


def _sort_sign(order: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    total, ordered = 1, ()
    for index in order:
        factor, ordered = merge_indices(ordered, (index,))
        total *= factor
    return total, ordered
