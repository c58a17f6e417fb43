"""Cartan calculus on the algebraic torus.

Multivector fields and differential forms with Laurent coefficients, contraction,
de Rham differential, Lie derivative, the Schouten bracket, divergence with respect to
a volume form, the residue integral and the integration pairings.

Index tuples are strictly increasing and 1-based: `(1, 2)` is `d1^d2` for
multivectors and `dt1^dt2` for forms. Contraction follows
`iota_{gamma ^ nu} = iota_gamma iota_nu`, with `iota_{d_i}` removing `dt_i` from the
left with an alternating sign by position.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import TYPE_CHECKING, TypeVar

from cychains.core import LaurentPoly, USeries, as_rational, format_terms, sign
from cychains.exceptions import DimensionMismatch, InputError, VolumeMismatch

if TYPE_CHECKING:  # pragma: no cover
    from typing import Iterator, Mapping, Sequence

    from cychains.core import Scalar
    from cychains.hochschild import HochChain, MultiDiffOp

    Indices = tuple[int, ...]

LOGGER = logging.getLogger(__name__)

F = TypeVar("F", bound="_GradedField")


def merge_indices(first: Indices, second: Indices) -> tuple[int, Indices]:
    """Sign and sorted union of `first ^ second`; sign 0 if an index repeats."""
    if set(first) & set(second):
        return 0, ()
    inversions = sum(1 for i in first for j in second if i > j)
    return sign(inversions), tuple(sorted(first + second))


def remove_index(index: int, indices: Indices) -> tuple[int, Indices]:
    """Left derivative: remove `index`, signed by its position. Sign 0 if absent."""
    if index not in indices:
        return 0, ()
    position = indices.index(index)
    return sign(position), indices[:position] + indices[position + 1 :]


def contract_basis(vector: Indices, form: Indices) -> tuple[int, Indices]:
    """`iota_{d_I}(dt_J)` on basis elements, as a sign and the remaining indices."""
    total = 1
    remaining = form
    for index in reversed(vector):
        factor, remaining = remove_index(index, remaining)
        if not factor:
            return 0, ()
        total *= factor
    return total, remaining


class _GradedField:
    """Antisymmetric tensor field with Laurent coefficients over a `dim`-torus."""

    __slots__ = ("_components", "dim")

    _symbol = ""

    def __init__(self, components: Mapping[Indices, LaurentPoly], dim: int) -> None:
        cleaned: dict[Indices, LaurentPoly] = {}
        for indices, coefficient in components.items():
            indices = tuple(indices)
            if list(indices) != sorted(set(indices)) or any(
                not 1 <= _ <= dim for _ in indices
            ):
                raise InputError(
                    f"Index tuple {indices} must be strictly increasing within 1..{dim}"
                )
            if coefficient.dim != dim:
                raise DimensionMismatch(
                    f"Coefficient in {coefficient.dim} variables on a {dim}-torus"
                )
            total = cleaned.get(indices, LaurentPoly.zero(dim)) + coefficient
            if total.is_zero():
                cleaned.pop(indices, None)
            else:
                cleaned[indices] = total
        self.dim = dim
        self._components = cleaned

    @classmethod
    def zero(cls: type[F], dim: int) -> F:
        return cls({}, dim)

    @classmethod
    def function(cls: type[F], f: LaurentPoly) -> F:
        """The rank-0 element given by a function."""
        return cls({(): f}, f.dim)

    @classmethod
    def basis(
        cls: type[F], indices: Sequence[int], dim: int, coefficient: LaurentPoly | None = None
    ) -> F:
        """`coefficient * d_I` (sorted with sign if `indices` is unsorted)."""
        coefficient = LaurentPoly.one(dim) if coefficient is None else coefficient
        total, ordered = 1, ()
        for index in indices:
            factor, ordered = merge_indices(ordered, (index,))
            total *= factor
        if not total:
            return cls.zero(dim)
        return cls({ordered: coefficient * total}, dim)

    @property
    def components(self) -> Mapping[Indices, LaurentPoly]:
        return dict(self._components)

    def items(self) -> Iterator[tuple[Indices, LaurentPoly]]:
        for indices in sorted(self._components, key=lambda _: (len(_), _)):
            yield indices, self._components[indices]

    def ranks(self) -> set[int]:
        return {len(_) for _ in self._components}

    def homogeneous(self: F, rank: int) -> F:
        """The rank-`rank` part."""
        return type(self)(
            {i: c for i, c in self._components.items() if len(i) == rank}, self.dim
        )

    def is_zero(self) -> bool:
        return not self._components

    def coefficient(self, indices: Sequence[int]) -> LaurentPoly:
        return self._components.get(tuple(indices), LaurentPoly.zero(self.dim))

    def _check(self, other: _GradedField) -> None:
        if type(other) is not type(self):
            raise InputError(
                f"Cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if other.dim != self.dim:
            raise DimensionMismatch(
                f"Cannot combine fields on a {self.dim}- and a {other.dim}-torus"
            )

    def __add__(self: F, other: F) -> F:
        self._check(other)
        components = dict(self._components)
        for indices, coefficient in other._components.items():
            components[indices] = (
                components.get(indices, LaurentPoly.zero(self.dim)) + coefficient
            )
        return type(self)(components, self.dim)

    def __neg__(self: F) -> F:
        return type(self)({i: -c for i, c in self._components.items()}, self.dim)

    def __sub__(self: F, other: F) -> F:
        return self + (-other)

    def __mul__(self: F, other: LaurentPoly | Scalar) -> F:
        if isinstance(other, LaurentPoly) and other.dim != self.dim:
            raise DimensionMismatch("Function and field live on different tori")
        return type(self)({i: c * other for i, c in self._components.items()}, self.dim)

    __rmul__ = __mul__

    def map_coefficients(self: F, function: object) -> F:
        return type(self)(
            {i: function(c) for i, c in self._components.items()},  # type: ignore[operator]
            self.dim,
        )

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.dim == other.dim and self._components == other._components  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.dim, frozenset(self._components.items())))

    def __str__(self) -> str:
        terms = []
        for indices, coefficient in self.items():
            wedge = "^".join(f"{self._symbol}{_}" for _ in indices)
            for exponent, value in coefficient.items():
                parts = []
                if any(exponent):
                    parts.append(f"t^[{','.join(map(str, exponent))}]")
                if wedge:
                    parts.append(f"({wedge})")
                terms.append((value, " * ".join(parts)))
        return format_terms(terms)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.__str__()!r}, dim={self.dim})"


class MultiVector(_GradedField):
    """A multivector field `sum_I f_I d_I`. Wedge rank `p` has degree `p - 1`."""

    __slots__ = ()
    _symbol = "d"


class DiffForm(_GradedField):
    """A differential form `sum_I f_I dt_I`. Rank `p` has degree `-p`."""

    __slots__ = ()
    _symbol = "dt"


def _same_dim(*fields: _GradedField) -> int:
    dims = {_.dim for _ in fields}
    if len(dims) != 1:
        raise DimensionMismatch(f"Operands live on tori of dimensions {sorted(dims)}")
    return dims.pop()


def _wedge(first: F, second: F) -> F:
    dim = _same_dim(first, second)
    components: dict[Indices, LaurentPoly] = {}
    for i, f in first._components.items():
        for j, g in second._components.items():
            factor, k = merge_indices(i, j)
            if factor:
                components[k] = components.get(k, LaurentPoly.zero(dim)) + f * g * factor
    return type(first)(components, dim)


def wedge(gamma: MultiVector, nu: MultiVector) -> MultiVector:
    """Graded-commutative wedge product of multivector fields."""
    return _wedge(gamma, nu)


def form_wedge(alpha: DiffForm, beta: DiffForm) -> DiffForm:
    """Wedge product of differential forms."""
    return _wedge(alpha, beta)


def contract(gamma: MultiVector, alpha: DiffForm) -> DiffForm:
    """Interior product `iota_gamma alpha`."""
    dim = _same_dim(gamma, alpha)
    components: dict[Indices, LaurentPoly] = {}
    for i, f in gamma._components.items():
        for j, g in alpha._components.items():
            factor, k = contract_basis(i, j)
            if factor:
                components[k] = components.get(k, LaurentPoly.zero(dim)) + f * g * factor
    return DiffForm(components, dim)


def de_rham(alpha: DiffForm) -> DiffForm:
    """de Rham differential `d alpha`."""
    components: dict[Indices, LaurentPoly] = {}
    for j, f in alpha._components.items():
        for axis in range(1, alpha.dim + 1):
            factor, k = merge_indices((axis,), j)
            if factor:
                components[k] = components.get(
                    k, LaurentPoly.zero(alpha.dim)
                ) + f.partial(axis) * factor
    return DiffForm(components, alpha.dim)


def lie_derivative(gamma: MultiVector, alpha: DiffForm) -> DiffForm:
    """`L_gamma = [d, iota_gamma]`, graded commutator of degrees -1 and rank(gamma)."""
    _same_dim(gamma, alpha)
    result = DiffForm.zero(alpha.dim)
    for rank in sorted(gamma.ranks()):
        part = gamma.homogeneous(rank)
        result = (
            result
            + de_rham(contract(part, alpha))
            - contract(part, de_rham(alpha)) * sign(rank)
        )
    return result


def _right_derivative(index: int, indices: Indices) -> tuple[int, Indices]:
    factor, rest = remove_index(index, indices)
    if not factor:
        return 0, ()
    return sign(len(indices) - 1 - indices.index(index)), rest


def _schouten(gamma: MultiVector, nu: MultiVector) -> MultiVector:
    dim = _same_dim(gamma, nu)
    components: dict[Indices, LaurentPoly] = {}

    def _add(indices: Indices, value: LaurentPoly) -> None:
        components[indices] = components.get(indices, LaurentPoly.zero(dim)) + value

    for (i, f), (j, g) in product(gamma._components.items(), nu._components.items()):
        for axis in range(1, dim + 1):
            # (gamma d/dxi_axis from the right) ^ (d/dt_axis nu)
            left, rest_i = _right_derivative(axis, i)
            if left:
                factor, k = merge_indices(rest_i, j)
                if factor:
                    _add(k, f * g.partial(axis) * (left * factor))
            # (d/dt_axis gamma) ^ (d/dxi_axis nu from the left)
            right, rest_j = remove_index(axis, j)
            if right:
                factor, k = merge_indices(i, rest_j)
                if factor:
                    _add(k, f.partial(axis) * g * (-right * factor))
    return MultiVector(components, dim)


def schouten(
    gamma: MultiVector | USeries[MultiVector], nu: MultiVector | USeries[MultiVector]
) -> MultiVector | USeries[MultiVector]:
    """Schouten bracket, extended u-bilinearly to u-series.

    On decomposable fields it is the signed double sum of brackets of vector factors
    (see `schouten_decomposable`); it extends the Lie bracket of vector fields and the
    action `[X, f] = X(f)` of vector fields on functions.
    """
    if isinstance(gamma, USeries) or isinstance(nu, USeries):
        if not (isinstance(gamma, USeries) and isinstance(nu, USeries)):
            raise InputError("Cannot bracket a u-series with a plain multivector")
        return gamma.bilinear(nu, _schouten)
    return _schouten(gamma, nu)


def schouten_decomposable(
    vs: Sequence[MultiVector], ws: Sequence[MultiVector]
) -> MultiVector:
    """`[v1^...^vm, w1^...^wn]` for vector fields, by the double sum over brackets.

    `sum_{i,j} (-1)^(i+j) [v_i, w_j] ^ v_1 ^ .. v_i^ .. ^ v_m ^ w_1 ^ .. w_j^ .. ^ w_n`
    """
    if not vs or not ws:
        raise InputError("Both sides need at least one vector field")
    for field in (*vs, *ws):
        if field.ranks() - {1}:
            raise InputError("The double-sum formula takes vector fields only")
    dim = _same_dim(*vs, *ws)
    result = MultiVector.zero(dim)
    for i, v in enumerate(vs, start=1):
        for j, w in enumerate(ws, start=1):
            term = _schouten(v, w)
            for k, other in enumerate(vs, start=1):
                if k != i:
                    term = wedge(term, other)
            for k, other in enumerate(ws, start=1):
                if k != j:
                    term = wedge(term, other)
            result = result + term * sign(i + j)
    return result


@dataclass(frozen=True)
class VolumeForm:
    """`unit * t^exponent * omega_std`, with `omega_std = dt1^..^dtd / (t1..td)`.

    Densities are restricted to Laurent units, so contraction against the volume form
    is invertible.
    """

    unit: Fraction
    exponent: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", as_rational(self.unit))
        object.__setattr__(self, "exponent", tuple(int(_) for _ in self.exponent))
        if not self.unit:
            raise InputError("The volume density must be a unit (nonzero coefficient)")

    @classmethod
    def standard(cls, dim: int) -> VolumeForm:
        """`omega_std` on the `dim`-torus."""
        return cls(Fraction(1), (0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.exponent)

    def density(self) -> LaurentPoly:
        """Coefficient of `dt1^..^dtd`."""
        return LaurentPoly.monomial([_ - 1 for _ in self.exponent], self.unit)

    def as_form(self) -> DiffForm:
        return DiffForm({tuple(range(1, self.dim + 1)): self.density()}, self.dim)

    def __str__(self) -> str:
        if self.unit == 1 and not any(self.exponent):
            return "omega_std"
        return f"vol({self.unit}, [{','.join(map(str, self.exponent))}])"


def contract_volume(gamma: MultiVector, volume: VolumeForm) -> DiffForm:
    """`iota_gamma Omega`."""
    if gamma.dim != volume.dim:
        raise DimensionMismatch("Multivector and volume form live on different tori")
    return contract(gamma, volume.as_form())


def uncontract_volume(eta: DiffForm, volume: VolumeForm) -> MultiVector:
    """Inverse of `contract_volume`: the multivector `beta` with `iota_beta Omega = eta`."""
    dim = volume.dim
    if eta.dim != dim:
        raise DimensionMismatch("Form and volume form live on different tori")
    full = tuple(range(1, dim + 1))
    inverse_density = volume.density().inverse()
    components: dict[Indices, LaurentPoly] = {}
    for remaining, h in eta._components.items():
        indices = tuple(_ for _ in full if _ not in remaining)
        factor, _ = contract_basis(indices, full)
        components[indices] = h * inverse_density * factor
    return MultiVector(components, dim)


def divergence(volume: VolumeForm, gamma: MultiVector) -> MultiVector:
    """`div_Omega gamma`, defined by `iota_{div gamma} Omega = d iota_gamma Omega`."""
    return uncontract_volume(de_rham(contract_volume(gamma, volume)), volume)


def top_density(eta: DiffForm) -> LaurentPoly:
    """Coefficient of `dt1^..^dtd` in the top-rank part of `eta`."""
    return eta.coefficient(tuple(range(1, eta.dim + 1)))


def residue_integral(eta: DiffForm) -> Fraction:
    """Integral over the torus: the coefficient of `t1^-1..td^-1 dt1^..^dtd`.

    Normalized so that the integral of `omega_std` is 1. Vanishes on exact forms.
    """
    if eta.ranks() - {eta.dim}:
        raise InputError(
            f"Only top-rank ({eta.dim}) forms can be integrated, got ranks "
            f"{sorted(eta.ranks())}"
        )
    return top_density(eta).coefficient((-1,) * eta.dim)


def integrate(eta: DiffForm) -> Fraction:
    """Residue integral of the top-rank part (other ranks integrate to zero)."""
    return residue_integral(eta.homogeneous(eta.dim))


class VTop:
    """A multivector-field-valued top form `nu (x) Omega`.

    A rank-`p` multivector part carries degree `p - 1`.
    """

    __slots__ = ("mv", "vol")

    def __init__(self, mv: MultiVector, vol: VolumeForm) -> None:
        if mv.dim != vol.dim:
            raise DimensionMismatch("Multivector and volume form live on different tori")
        self.mv = mv
        self.vol = vol

    def _check(self, other: VTop) -> None:
        if other.vol != self.vol:
            raise VolumeMismatch(f"Cannot combine {self.vol} with {other.vol}")

    def __add__(self, other: VTop) -> VTop:
        self._check(other)
        return VTop(self.mv + other.mv, self.vol)

    def __neg__(self) -> VTop:
        return VTop(-self.mv, self.vol)

    def __sub__(self, other: VTop) -> VTop:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | Scalar) -> VTop:
        return VTop(self.mv * other, self.vol)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.mv.is_zero()

    def ranks(self) -> set[int]:
        return self.mv.ranks()

    def as_form(self) -> DiffForm:
        """`iota_nu Omega`."""
        return contract_volume(self.mv, self.vol)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VTop):
            return NotImplemented
        return self.vol == other.vol and self.mv == other.mv

    def __hash__(self) -> int:
        return hash((self.mv, self.vol))

    def __str__(self) -> str:
        return f"({self.mv}) (x) {self.vol}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.__str__()!r})"


def pair_vt_form(x: VTop, alpha: DiffForm) -> Fraction:
    """`<nu Omega, alpha> = int Omega (iota_nu alpha)`. Rank mismatches pair to 0."""
    if x.mv.dim != alpha.dim:
        raise DimensionMismatch("VTop element and form live on different tori")
    function = contract(x.mv, alpha).coefficient(())
    return (function * x.vol.density()).coefficient((-1,) * alpha.dim)


def pair_vt_form_series(
    x: USeries[VTop], alpha: USeries[DiffForm]
) -> tuple[Fraction, ...]:
    """u-bilinear extension of `pair_vt_form`; the coefficients of `u^0..u^cap`."""
    ucap = min(x.ucap, alpha.ucap)
    return tuple(
        sum(
            (pair_vt_form(x.coeffs[i], alpha.coeffs[power - i]) for i in range(power + 1)),
            Fraction(0),
        )
        for power in range(ucap + 1)
    )


def pair_cochain_chain(phi: MultiDiffOp, c: HochChain) -> Fraction:
    """`<phi, a0 (x) .. (x) an> = int a0 phi(a1, .., an)` for top-form-valued `phi`.

    Tensors whose length does not match the arity of `phi` raise an arity error.
    """
    from cychains.exceptions import ArityMismatch

    if not phi.top_valued:
        raise ArityMismatch("Only top-form-valued cochains pair with chains")
    total = Fraction(0)
    for tensor, coefficient in c.items():
        if len(tensor) != phi.arity + 1:
            raise ArityMismatch(
                f"Cannot pair an arity-{phi.arity} cochain with a length-"
                f"{len(tensor) - 1} chain"
            )
        a0, *rest = (LaurentPoly.monomial(_) for _ in tensor)
        density = a0 * phi.evaluate(*rest)
        total += coefficient * density.coefficient((-1,) * phi.dim)
    return total


class DiffOp:
    """A linear differential operator `sum_alpha c_alpha d^alpha` on functions."""

    __slots__ = ("_terms", "dim")

    def __init__(self, terms: Mapping[Sequence[int], LaurentPoly], dim: int) -> None:
        cleaned: dict[tuple[int, ...], LaurentPoly] = {}
        for multi_index, coefficient in terms.items():
            multi_index = tuple(multi_index)
            if len(multi_index) != dim or min(multi_index, default=0) < 0:
                raise InputError(f"Invalid multi-index {multi_index} for a {dim}-torus")
            total = cleaned.get(multi_index, LaurentPoly.zero(dim)) + coefficient
            if total.is_zero():
                cleaned.pop(multi_index, None)
            else:
                cleaned[multi_index] = total
        self.dim = dim
        self._terms = cleaned

    @classmethod
    def multiplication(cls, f: LaurentPoly) -> DiffOp:
        return cls({(0,) * f.dim: f}, f.dim)

    @classmethod
    def partial(cls, axis: int, dim: int) -> DiffOp:
        multi_index = [0] * dim
        multi_index[axis - 1] = 1
        return cls({tuple(multi_index): LaurentPoly.one(dim)}, dim)

    @property
    def terms(self) -> Mapping[tuple[int, ...], LaurentPoly]:
        return dict(self._terms)

    def order(self) -> int:
        return max((sum(_) for _ in self._terms), default=0)

    def __call__(self, f: LaurentPoly) -> LaurentPoly:
        result = LaurentPoly.zero(self.dim)
        for multi_index, coefficient in self._terms.items():
            result = result + coefficient * f.derivative(multi_index)
        return result

    def __add__(self, other: DiffOp) -> DiffOp:
        terms = dict(self._terms)
        for multi_index, coefficient in other._terms.items():
            terms[multi_index] = terms.get(multi_index, LaurentPoly.zero(self.dim)) + coefficient
        return DiffOp(terms, self.dim)

    def __neg__(self) -> DiffOp:
        return DiffOp({k: -v for k, v in self._terms.items()}, self.dim)

    def __sub__(self, other: DiffOp) -> DiffOp:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._terms.items()))
        return f"{type(self).__name__}({{{body}}}, dim={self.dim})"


def formal_adjoint_diffop(operator: DiffOp, volume: VolumeForm) -> DiffOp:
    """The unique `D'` with `int (D f) g Omega = int f (D' g) Omega`.

    Integration by parts against the residue functional:
    `D' g = rho^-1 sum_alpha (-1)^|alpha| d^alpha(c_alpha rho g)`.
    """
    if operator.dim != volume.dim:
        raise DimensionMismatch("Operator and volume form live on different tori")
    rho = volume.density()
    inverse = rho.inverse()
    terms: dict[tuple[int, ...], LaurentPoly] = {}
    for alpha, coefficient in operator.terms.items():
        weight = coefficient * rho
        for beta in product(*(range(_ + 1) for _ in alpha)):
            binomial = 1
            for a, b in zip(alpha, beta):
                binomial *= comb(a, b)
            rest = tuple(a - b for a, b in zip(alpha, beta))
            term = inverse * weight.derivative(rest) * (sign(sum(alpha)) * binomial)
            terms[beta] = terms.get(beta, LaurentPoly.zero(volume.dim)) + term
    return DiffOp(terms, volume.dim)


def uvtop(mv: USeries[MultiVector], vol: VolumeForm) -> USeries[VTop]:
    """`gamma (x) Omega` for a u-series of multivector fields."""
    return mv.map(lambda _: VTop(_, vol))
