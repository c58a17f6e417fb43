"""Exact arithmetic for the torus model.

Rationals, the Laurent coefficient ring, graded-degree bookkeeping, the Koszul sign
engine and truncated power series in the formal parameter `u`.

All values are immutable after construction and every operation is pure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import TYPE_CHECKING, Callable, Generic, TypeVar

from cychains.exceptions import DimensionMismatch, DivisionByUError, InputError

if TYPE_CHECKING:  # pragma: no cover
    from typing import Iterable, Iterator, Mapping, Sequence, Union

    Scalar = Union[int, Fraction]
    Exponent = tuple[int, ...]

LOGGER = logging.getLogger(__name__)

Rational = Fraction
"""The ground field. Exact rationals stand in for the complex numbers."""

U_DEGREE = 2
"""Graded degree carried by each power of the formal parameter `u`."""

X = TypeVar("X")
Y = TypeVar("Y")


def as_rational(value: Scalar | str) -> Fraction:
    """Coerce an integer, fraction or fraction literal (e.g. `'3/4'`) to a rational."""
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"Not an exact rational number: {value!r}") from exc


class LaurentPoly:
    """An exact-rational Laurent polynomial in `dim` variables `t1, ..., td`.

    Terms are stored as a mapping from exponent vectors in ZZ^d to nonzero rationals.
    """

    __slots__ = ("_hash", "_terms", "dim")

    def __init__(self, terms: Mapping[Exponent, Scalar], dim: int) -> None:
        if dim < 1:
            raise InputError(f"Torus dimension must be positive, got {dim}")
        cleaned: dict[Exponent, Fraction] = {}
        for exponent, coefficient in terms.items():
            exponent = tuple(int(_) for _ in exponent)
            if len(exponent) != dim:
                raise DimensionMismatch(
                    f"Exponent vector {exponent} does not have length {dim}"
                )
            value = cleaned.get(exponent, Fraction(0)) + as_rational(coefficient)
            if value:
                cleaned[exponent] = value
            else:
                cleaned.pop(exponent, None)
        self.dim = dim
        self._terms = cleaned
        self._hash: int | None = None

    # Constructors

    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        """The zero polynomial."""
        return cls({}, dim)

    @classmethod
    def constant(cls, value: Scalar, dim: int) -> LaurentPoly:
        """A constant polynomial."""
        return cls({(0,) * dim: value}, dim)

    @classmethod
    def one(cls, dim: int) -> LaurentPoly:
        """The unit of the ring."""
        return cls.constant(1, dim)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Scalar = 1) -> LaurentPoly:
        """The monomial `coefficient * t^exponent`."""
        return cls({tuple(exponent): coefficient}, len(exponent))

    @classmethod
    def variable(cls, axis: int, dim: int) -> LaurentPoly:
        """The coordinate function `t_axis` (1-based axis)."""
        _check_axis(axis, dim)
        exponent = [0] * dim
        exponent[axis - 1] = 1
        return cls.monomial(exponent)

    # Inspection

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        """Read-only view of the exponent-to-coefficient mapping."""
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical (sorted) order."""
        for exponent in sorted(self._terms):
            yield exponent, self._terms[exponent]

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        """Coefficient of `t^exponent`."""
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        """Coefficient of the unit monomial."""
        return self.coefficient((0,) * self.dim)

    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self._terms

    def is_constant(self) -> bool:
        """Whether only the unit monomial occurs."""
        return all(not any(_) for _ in self._terms)

    def is_unit(self) -> bool:
        """Whether this is invertible, i.e., a nonzero monomial."""
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    # Arithmetic

    def _coerce(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise DimensionMismatch(
                    f"Cannot combine polynomials in {self.dim} and {other.dim} variables"
                )
            return other
        return LaurentPoly.constant(other, self.dim)

    def __add__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        other = self._coerce(other)
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, Fraction(0)) + coefficient
        return LaurentPoly(terms, self.dim)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.dim)

    def __sub__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            factor = as_rational(other)
            return LaurentPoly({e: c * factor for e, c in self._terms.items()}, self.dim)
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return self * (1 / as_rational(other))
        return self * other.inverse()

    def inverse(self) -> LaurentPoly:
        """Inverse of a unit (nonzero monomial)."""
        if not self.is_unit():
            raise InputError(f"{self} is not a unit of the Laurent ring")
        ((exponent, coefficient),) = self._terms.items()
        return LaurentPoly({tuple(-_ for _ in exponent): 1 / coefficient}, self.dim)

    def shift(self, exponent: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial `t^exponent`."""
        return LaurentPoly(
            {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms.items()},
            self.dim,
        )

    def partial(self, axis: int, order: int = 1) -> LaurentPoly:
        """`order`-th partial derivative along the 1-based `axis`."""
        result = self
        for _ in range(order):
            result = laurent_partial(result, axis)
        return result

    def derivative(self, multi_index: Sequence[int]) -> LaurentPoly:
        """Apply `d^alpha` for the multi-index `alpha`."""
        if len(multi_index) != self.dim:
            raise DimensionMismatch(
                f"Multi-index {tuple(multi_index)} does not have length {self.dim}"
            )
        terms: dict[Exponent, Fraction] = {}
        for exponent, coefficient in self._terms.items():
            factor = Fraction(coefficient)
            for power, order in zip(exponent, multi_index):
                for step in range(order):
                    factor *= power - step
                if not factor:
                    break
            if factor:
                new_exponent = tuple(e - o for e, o in zip(exponent, multi_index))
                terms[new_exponent] = terms.get(new_exponent, Fraction(0)) + factor
        return LaurentPoly(terms, self.dim)

    def strip_constant(self) -> LaurentPoly:
        """Canonical representative in A/QQ*1: drop the constant term."""
        return LaurentPoly(
            {e: c for e, c in self._terms.items() if any(e)}, self.dim
        )

    def monomials(self) -> Iterator[LaurentPoly]:
        """The terms as individual monomials, in canonical order."""
        for exponent, coefficient in self.items():
            yield LaurentPoly({exponent: coefficient}, self.dim)

    # Comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_terms(
            (
                coefficient,
                "" if not any(exponent) else f"t^[{','.join(map(str, exponent))}]",
            )
            for exponent, coefficient in self.items()
        )

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.__str__()!r}, dim={self.dim})"


def format_terms(
    terms: Iterable[tuple[Fraction, str]], *, omit_unit: bool = False
) -> str:
    """Render `(coefficient, basis)` pairs as `c1 * b1 + c2 * b2 - ...`.

    An empty basis string stands for the unit. The empty sum renders as `0`. With
    `omit_unit`, coefficients of magnitude 1 in front of a basis element are dropped.
    """
    rendered = ""
    for coefficient, basis in terms:
        magnitude = abs(coefficient)
        if basis and omit_unit and magnitude == 1:
            body = basis
        else:
            body = f"{magnitude} * {basis}" if basis else f"{magnitude}"
        if not rendered:
            rendered = f"-{body}" if coefficient < 0 else body
        else:
            rendered += f" - {body}" if coefficient < 0 else f" + {body}"
    return rendered or "0"


def format_monomial(exponent: Sequence[int]) -> str:
    """Name a monomial as `t1^2*t2^-1`; the constant monomial is `1`."""
    factors = []
    for axis, power in enumerate(exponent, start=1):
        if power == 1:
            factors.append(f"t{axis}")
        elif power:
            factors.append(f"t{axis}^{power}")
    return "*".join(factors) or "1"


def _check_axis(axis: int, dim: int) -> None:
    if not 1 <= axis <= dim:
        raise InputError(f"Axis {axis} is out of range for a {dim}-torus")


def laurent_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact product of two Laurent polynomials over the same torus."""
    if f.dim != g.dim:
        raise DimensionMismatch(
            f"Cannot multiply polynomials in {f.dim} and {g.dim} variables"
        )
    terms: dict[Exponent, Fraction] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            exponent = tuple(a + b for a, b in zip(e1, e2))
            terms[exponent] = terms.get(exponent, Fraction(0)) + c1 * c2
    return LaurentPoly(terms, f.dim)


def laurent_partial(f: LaurentPoly, i: int) -> LaurentPoly:
    """Exact partial derivative along the coordinate `t_i` (1-based)."""
    _check_axis(i, f.dim)
    multi_index = [0] * f.dim
    multi_index[i - 1] = 1
    return f.derivative(multi_index)


@dataclass(frozen=True)
class GradedDegree:
    """An integer degree in the shifted conventions used throughout.

    Multivector fields of wedge rank `p` carry `p - 1`, differential forms of rank `p`
    carry `-p`, and every power of `u` adds `U_DEGREE`.
    """

    value: int

    @classmethod
    def of_multivector(cls, rank: int, u_power: int = 0) -> GradedDegree:
        return cls(rank - 1 + U_DEGREE * u_power)

    @classmethod
    def of_form(cls, rank: int, u_power: int = 0) -> GradedDegree:
        return cls(-rank + U_DEGREE * u_power)

    @property
    def parity(self) -> int:
        return self.value % 2

    def __add__(self, other: GradedDegree | int) -> GradedDegree:
        return GradedDegree(self.value + int(other))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def koszul_sign(
    permutation: Sequence[int], degrees: Sequence[GradedDegree | int]
) -> int:
    """Koszul sign of reordering homogeneous elements.

    `permutation[k]` is the (0-based) index of the element that ends up in position
    `k`, and `degrees[i]` is the degree of the `i`-th element before reordering.
    Every transposition of two elements contributes `(-1)^(|a| |b|)`.
    """
    if len(permutation) != len(degrees):
        raise InputError(
            f"Permutation of length {len(permutation)} does not match "
            f"{len(degrees)} degrees"
        )
    if sorted(permutation) != list(range(len(permutation))):
        raise InputError(f"Not a permutation: {tuple(permutation)}")
    parities = [int(_) % 2 for _ in degrees]
    exponent = 0
    for left, right in combinations(range(len(permutation)), 2):
        if permutation[left] > permutation[right]:
            exponent += parities[permutation[left]] * parities[permutation[right]]
    return -1 if exponent % 2 else 1


def sign(exponent: int) -> int:
    """`(-1)^exponent`."""
    return -1 if exponent % 2 else 1


class USeries(Generic[X]):
    """A power series in `u` truncated after `u^ucap`.

    Coefficients are any values supporting `+`, `-`, unary `-`, multiplication by
    rationals and `is_zero()`. All identities hold modulo `u^(ucap + 1)`, so series of
    different caps combine at the smaller cap.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[X]) -> None:
        if not coeffs:
            raise InputError("A u-series needs at least the u^0 coefficient")
        self.coeffs: tuple[X, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, value: X, ucap: int) -> USeries[X]:
        """The series `value + 0*u + ...` up to `ucap`."""
        zero = value - value  # type: ignore[operator]
        return cls([value] + [zero] * ucap)

    @classmethod
    def from_powers(cls, powers: Mapping[int, X], zero: X, ucap: int) -> USeries[X]:
        """Build from a sparse `{power: coefficient}` mapping, dropping powers > ucap."""
        if ucap < 0:
            raise InputError(f"ucap must be non-negative, got {ucap}")
        return cls([powers.get(j, zero) for j in range(ucap + 1)])

    @property
    def ucap(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> X:
        """Coefficient of `u^power`."""
        return self.coeffs[power]

    def zero_coefficient(self) -> X:
        first = self.coeffs[0]
        return first - first  # type: ignore[operator]

    def truncate(self, ucap: int) -> USeries[X]:
        """Drop all powers above `ucap`."""
        if ucap < 0:
            raise InputError(f"ucap must be non-negative, got {ucap}")
        if ucap > self.ucap:
            raise InputError(f"Cannot extend a series known to u^{self.ucap}")
        return USeries(self.coeffs[: ucap + 1])

    def map(self, function: Callable[[X], Y]) -> USeries[Y]:
        """Apply a u-linear map coefficient-wise."""
        return USeries([function(_) for _ in self.coeffs])

    def bilinear(
        self, other: USeries[Y], function: Callable[[X, Y], X]
    ) -> USeries[X]:
        """u-bilinear extension of `function` (Cauchy product, truncated)."""
        ucap = min(self.ucap, other.ucap)
        coeffs = []
        for power in range(ucap + 1):
            total = function(self.coeffs[0], other.coeffs[power])
            for left in range(1, power + 1):
                total = total + function(self.coeffs[left], other.coeffs[power - left])
            coeffs.append(total)
        return USeries(coeffs)

    def times_u(self, power: int = 1) -> USeries[X]:
        """Multiply by `u^power`, keeping the cap."""
        zero = self.zero_coefficient()
        return USeries(([zero] * power + list(self.coeffs))[: self.ucap + 1])

    def scale(self, factor: Scalar) -> USeries[X]:
        factor = as_rational(factor)
        return USeries([_ * factor for _ in self.coeffs])  # type: ignore[operator]

    def is_zero(self) -> bool:
        return all(_.is_zero() for _ in self.coeffs)  # type: ignore[attr-defined]

    def __add__(self, other: USeries[X]) -> USeries[X]:
        ucap = min(self.ucap, other.ucap)
        return USeries(
            [a + b for a, b in zip(self.coeffs[: ucap + 1], other.coeffs)]  # type: ignore[operator]
        )

    def __neg__(self) -> USeries[X]:
        return USeries([-_ for _ in self.coeffs])  # type: ignore[operator]

    def __sub__(self, other: USeries[X]) -> USeries[X]:
        return self + (-other)

    def __mul__(self, factor: Scalar) -> USeries[X]:
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        parts = []
        for power, coefficient in enumerate(self.coeffs):
            if coefficient.is_zero():  # type: ignore[attr-defined]
                continue
            prefix = "" if power == 0 else ("u * " if power == 1 else f"u^{power} * ")
            parts.append(f"{prefix}({coefficient})")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.__str__()!r}, ucap={self.ucap})"


def useries_div_u(s: USeries[X]) -> USeries[X]:
    """Divide by `u`.

    The `u^0` coefficient must vanish. The top coefficient of the quotient is unknown
    and dropped, so the cap decreases by one.
    """
    if not s.coeffs[0].is_zero():  # type: ignore[attr-defined]
        raise DivisionByUError(
            f"Cannot divide by u: the u^0 coefficient is nonzero ({s.coeffs[0]})"
        )
    if s.ucap == 0:
        raise DivisionByUError("Cannot divide a series known only to u^0 by u")
    return USeries(s.coeffs[1:])


def multinomial_splits(
    multi_index: Sequence[int], parts: int
) -> Iterator[tuple[int, tuple[tuple[int, ...], ...]]]:
    """Distribute `d^alpha` over a product of `parts` factors (general Leibniz rule).

    Yields `(coefficient, (beta_1, ..., beta_parts))` with `sum(beta_k) == alpha`.
    """
    per_axis = [list(_compositions(order, parts)) for order in multi_index]

    def _recurse(axis: int) -> Iterator[tuple[int, list[list[int]]]]:
        if axis == len(per_axis):
            yield 1, [[] for _ in range(parts)]
            return
        for weight, composition in per_axis[axis]:
            for rest_weight, rest in _recurse(axis + 1):
                yield weight * rest_weight, [
                    [composition[k], *rest[k]] for k in range(parts)
                ]

    for weight, betas in _recurse(0):
        yield weight, tuple(tuple(_) for _ in betas)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, list[int]]]:
    """Ordered compositions of `total` into `parts` non-negative integers, with
    their multinomial coefficients."""
    if parts == 1:
        yield 1, [total]
        return
    for first in range(total + 1):
        for weight, rest in _compositions(total - first, parts - 1):
            yield weight * comb(total, first), [first, *rest]
