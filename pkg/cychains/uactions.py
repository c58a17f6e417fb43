"""The family `L^(t)` of actions of `(T[[u]], u div)` on `(Omega[[u]], u d)`.

`S^(t)` rescales the `u^j` coefficient by `t^j`. The action
`L^(t)_gamma = sum_j (ut)^j (L_(gamma_j) + t iota_(div gamma_j))` interpolates between
the Lie derivative at `t = 0` and the divergence-corrected action at `t = 1`. The
homotopies `h^(t)` and the closed form `H^(1) = exp(s iota^+ / u)` connect them.

Identities that are polynomial in `t` are checked on `TPolynomial` values, so the
`t`-derivative is exact coefficient differentiation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import TYPE_CHECKING, Callable, Generic, TypeVar

from cychains.cartan import (
    DiffForm,
    MultiVector,
    VolumeForm,
    VTop,
    contract,
    de_rham,
    divergence,
    lie_derivative,
    schouten,
    wedge,
)
from cychains.core import USeries, as_rational, sign, useries_div_u
from cychains.exceptions import InputError, VolumeMismatch

if TYPE_CHECKING:  # pragma: no cover
    from typing import Mapping, Sequence

    from cychains.core import Scalar

    UMultiVector = USeries[MultiVector]
    UDiffForm = USeries[DiffForm]
    UVTop = USeries[VTop]

LOGGER = logging.getLogger(__name__)

X = TypeVar("X")

H1_SIGN_CHANNELS = (1, -1)
"""Candidate signs `s` in `H^(1) = exp(s iota^+ / u)`."""

H1_SIGN = -1
"""The sign channel for which `H^(1)` intertwines the `L^(0)` and `L^(1)` modules."""


@dataclass(frozen=True)
class ScalingParam:
    """The rational parameter `t` of the u-scaling `S^(t)`."""

    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", as_rational(self.t))


def _t(t: ScalingParam | Scalar) -> Fraction:
    return t.t if isinstance(t, ScalingParam) else as_rational(t)


def scale_u(t: ScalingParam | Scalar, gamma: UMultiVector) -> UMultiVector:
    """`S^(t) gamma = sum_j (tu)^j gamma_j`."""
    value = _t(t)
    return USeries([c * (value**j) for j, c in enumerate(gamma.coeffs)])


def rank_parts(gamma: UMultiVector) -> dict[int, UMultiVector]:
    """Split a u-series of multivectors into wedge-rank homogeneous u-series."""
    ranks = sorted({r for c in gamma.coeffs for r in c.ranks()})
    return {rank: gamma.map(lambda c, rank=rank: c.homogeneous(rank)) for rank in ranks}


def iota_t(t: ScalingParam | Scalar, gamma: UMultiVector, alpha: UDiffForm) -> UDiffForm:
    """`iota^(t)_gamma = iota_(S^(t) gamma)`, u-bilinear."""
    return scale_u(t, gamma).bilinear(alpha, contract)


def u_divergence(volume: VolumeForm, gamma: UMultiVector) -> UMultiVector:
    """The differential `u div` of the multivector dgla."""
    return gamma.map(lambda c: divergence(volume, c)).times_u()


def u_de_rham(alpha: UDiffForm) -> UDiffForm:
    """The differential `u d` on forms."""
    return alpha.map(de_rham).times_u()


def action_Lt(
    t: ScalingParam | Scalar, gamma: UMultiVector, alpha: UDiffForm, volume: VolumeForm
) -> UDiffForm:
    """`L^(t)_gamma alpha = sum_j (ut)^j (L_(gamma_j) alpha + t iota_(div gamma_j) alpha)`."""
    value = _t(t)
    scaled = scale_u(value, gamma)
    lie = scaled.bilinear(alpha, lie_derivative)
    correction = scaled.map(lambda c: divergence(volume, c)).bilinear(alpha, contract)
    return lie + correction * value


def action_Lt_from_commutator(
    t: ScalingParam | Scalar, gamma: UMultiVector, alpha: UDiffForm, volume: VolumeForm
) -> UDiffForm:
    """`(1/u)([u d, iota^(t)_gamma] + iota^(t)_(u div gamma)) alpha`.

    Known to one u-power less than the inputs.
    """
    total = None
    for rank, part in rank_parts(gamma).items():
        term = (
            u_de_rham(iota_t(t, part, alpha))
            - iota_t(t, part, u_de_rham(alpha)) * sign(rank)
            + iota_t(t, u_divergence(volume, part), alpha)
        )
        total = term if total is None else total + term
    if total is None:
        return useries_div_u(alpha.map(lambda c: c * 0))
    return useries_div_u(total)


def action_Lt_dual(
    t: ScalingParam | Scalar, gamma: UMultiVector, x: UVTop, volume: VolumeForm
) -> UVTop:
    """The dual action on `VT[[u]]`.

    `sum_j (tu)^j ([gamma_j, nu] Omega + (-1)^|gamma_j| (1 - t)(div gamma_j ^ nu) Omega)`.
    """
    value = _t(t)
    for coefficient in x.coeffs:
        if coefficient.vol != volume:
            raise VolumeMismatch(f"Element carries {coefficient.vol}, expected {volume}")

    def _pointwise(g: MultiVector, element: VTop) -> VTop:
        result = MultiVector.zero(volume.dim)
        for rank in sorted(g.ranks()):
            part = g.homogeneous(rank)
            result = (
                result
                + schouten(part, element.mv)
                + wedge(divergence(volume, part), element.mv) * (sign(rank - 1) * (1 - value))
            )
        return VTop(result, volume)

    return scale_u(value, gamma).bilinear(x, _pointwise)


def dual_differential(x: UVTop) -> UVTop:
    """`delta(nu Omega) = u (div nu) Omega`."""
    return x.map(lambda c: VTop(divergence(c.vol, c.mv), c.vol)).times_u()


def h_t(t: ScalingParam | Scalar, gamma: UMultiVector, alpha: UDiffForm) -> UDiffForm:
    """`h^(t)_gamma = -(1/u) d/dt iota^(t)_gamma = -sum_(j>=1) j t^(j-1) u^(j-1) iota_(gamma_j)`."""
    value = _t(t)
    derivative = USeries(
        [c * (j * value ** (j - 1)) if j else c * 0 for j, c in enumerate(gamma.coeffs)]
    )
    return -useries_div_u(derivative.bilinear(alpha, contract))


def iota_plus(gamma: UMultiVector, alpha: UDiffForm) -> UDiffForm:
    """`iota^+_gamma = sum_(j>=1) u^j iota_(gamma_j)`."""
    positive = USeries([gamma.coeffs[0] * 0, *gamma.coeffs[1:]])
    return positive.bilinear(alpha, contract)


def H1_taylor(
    n: int, gammas: Sequence[UMultiVector], alpha: UDiffForm, s: int = H1_SIGN
) -> UDiffForm:
    """n-th Taylor coefficient of `exp(s iota^+ / u)`.

    `(1/n!) s^n (iota^+_(gamma_1)/u) .. (iota^+_(gamma_n)/u) alpha`, known to `n`
    u-powers less than `alpha`.
    """
    if len(gammas) != n:
        raise InputError(f"Expected {n} multivector arguments, got {len(gammas)}")
    if s not in H1_SIGN_CHANNELS:
        raise InputError(f"Sign channel must be one of {H1_SIGN_CHANNELS}, got {s}")
    result = alpha
    for gamma in reversed(gammas):
        result = useries_div_u(iota_plus(gamma, result))
    return result * Fraction(s**n, factorial(n))


class TPolynomial(Generic[X]):
    """A polynomial in `t` with coefficients in any additive type with `is_zero()`."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, X]) -> None:
        if any(power < 0 for power in coeffs):
            raise InputError("Powers of t must be non-negative")
        self.coeffs: dict[int, X] = dict(coeffs)

    @classmethod
    def constant(cls, value: X) -> TPolynomial[X]:
        return cls({0: value})

    def __add__(self, other: TPolynomial[X]) -> TPolynomial[X]:
        coeffs = dict(self.coeffs)
        for power, value in other.coeffs.items():
            coeffs[power] = coeffs[power] + value if power in coeffs else value  # type: ignore[operator]
        return TPolynomial(coeffs)

    def __neg__(self) -> TPolynomial[X]:
        return TPolynomial({k: -v for k, v in self.coeffs.items()})  # type: ignore[operator]

    def __sub__(self, other: TPolynomial[X]) -> TPolynomial[X]:
        return self + (-other)

    def __mul__(self, factor: Scalar) -> TPolynomial[X]:
        return TPolynomial({k: v * factor for k, v in self.coeffs.items()})  # type: ignore[operator]

    __rmul__ = __mul__

    def derivative(self) -> TPolynomial[X]:
        """Exact `d/dt`."""
        return TPolynomial(
            {k - 1: v * k for k, v in self.coeffs.items() if k}  # type: ignore[operator]
        )

    def evaluate(self, t: Scalar) -> X:
        value = as_rational(t)
        powers = sorted(self.coeffs)
        if not powers:
            raise InputError("Cannot evaluate an empty t-polynomial")
        result = self.coeffs[powers[0]] * value ** powers[0]  # type: ignore[operator]
        for power in powers[1:]:
            result = result + self.coeffs[power] * value**power  # type: ignore[operator]
        return result

    def then(self, operator: Callable[[X], TPolynomial[X]]) -> TPolynomial[X]:
        """Apply a t-polynomial-valued linear operator to every coefficient."""
        result: TPolynomial[X] = TPolynomial({})
        for power, value in self.coeffs.items():
            image = operator(value)
            result = result + TPolynomial({power + k: v for k, v in image.coeffs.items()})
        return result

    def truncate(self, ucap: int) -> TPolynomial[X]:
        """Truncate every u-series coefficient to `ucap`."""
        return TPolynomial({k: v.truncate(ucap) for k, v in self.coeffs.items()})  # type: ignore[attr-defined]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.coeffs.values())  # type: ignore[attr-defined]

    def __repr__(self) -> str:
        body = " + ".join(f"t^{k} * ({v})" for k, v in sorted(self.coeffs.items()))
        return f"{type(self).__name__}({body or '0'})"


FormOperator = Callable[["UDiffForm"], TPolynomial["UDiffForm"]]


def ud_operator() -> FormOperator:
    """`u d` as a t-independent operator."""
    return lambda alpha: TPolynomial.constant(u_de_rham(alpha))


def lt_operator(gamma: UMultiVector, volume: VolumeForm) -> FormOperator:
    """`alpha -> L^(t)_gamma alpha` as a polynomial in `t`.

    The `t^m` coefficient is `u^m L_(gamma_m) alpha + u^(m-1) iota_(div gamma_(m-1)) alpha`.
    """

    def _apply(alpha: UDiffForm) -> TPolynomial[UDiffForm]:
        coeffs: dict[int, UDiffForm] = {}
        zero = gamma.coeffs[0] * 0
        for power in range(gamma.ucap + 2):
            lie = USeries.from_powers(
                {power: gamma.coeffs[power]} if power <= gamma.ucap else {}, zero, gamma.ucap
            ).bilinear(alpha, lie_derivative)
            previous = (
                {power - 1: divergence(volume, gamma.coeffs[power - 1])}
                if 1 <= power <= gamma.ucap + 1
                else {}
            )
            correction = USeries.from_powers(previous, zero, gamma.ucap).bilinear(
                alpha, contract
            )
            coeffs[power] = lie + correction
        return TPolynomial(coeffs)

    return _apply


def ht_operator(gamma: UMultiVector) -> FormOperator:
    """`alpha -> h^(t)_gamma alpha`; the `t^m` coefficient is `-(m+1) u^m iota_(gamma_(m+1))`."""

    def _apply(alpha: UDiffForm) -> TPolynomial[UDiffForm]:
        zero = gamma.coeffs[0] * 0
        coeffs: dict[int, UDiffForm] = {}
        for j in range(1, gamma.ucap + 1):
            single = USeries.from_powers({j: gamma.coeffs[j]}, zero, gamma.ucap)
            coeffs[j - 1] = -useries_div_u(single.bilinear(alpha, contract)) * j
        if not coeffs:
            coeffs[0] = alpha.map(lambda c: c * 0)
        return TPolynomial(coeffs)

    return _apply


def graded_commutator(
    first: FormOperator, first_parity: int, second: FormOperator, second_parity: int
) -> FormOperator:
    """`[A, B] = A B - (-1)^(|A||B|) B A` on t-polynomial-valued operators."""
    factor = sign(first_parity * second_parity)

    def _apply(alpha: UDiffForm) -> TPolynomial[UDiffForm]:
        return second(alpha).then(first) - first(alpha).then(second) * factor

    return _apply


def rank_of(gamma: UMultiVector) -> int:
    """The single wedge rank of a homogeneous u-series."""
    ranks = {r for c in gamma.coeffs for r in c.ranks()}
    if len(ranks) > 1:
        raise InputError(f"Expected a rank-homogeneous multivector, got ranks {sorted(ranks)}")
    return ranks.pop() if ranks else 0


def h_condition_differential(
    gamma: UMultiVector, alpha: UDiffForm, volume: VolumeForm
) -> TPolynomial[UDiffForm]:
    """Residual of `-(d/dt) L^(t)_gamma = [u d, h^(t)_gamma] + h^(t)_(u div gamma)`."""
    rank = rank_of(gamma)
    lhs = -lt_operator(gamma, volume)(alpha).derivative()
    rhs = graded_commutator(ud_operator(), 1, ht_operator(gamma), rank)(alpha) + ht_operator(
        u_divergence(volume, gamma)
    )(alpha)
    return (lhs - rhs).truncate(min(gamma.ucap, alpha.ucap) - 1)


def h_condition_bracket(
    gamma: UMultiVector,
    nu: UMultiVector,
    alpha: UDiffForm,
    volume: VolumeForm,
    *,
    repeat_gamma: bool = False,
) -> TPolynomial[UDiffForm]:
    """Residual of `h_[gamma,nu] = [h_gamma, L_nu] + (-1)^|gamma| [L_gamma, h_nu]`.

    With `repeat_gamma` the last bracket is `[L_gamma, h_gamma]`, the variant that
    does not hold in general.
    """
    g_rank, n_rank = rank_of(gamma), rank_of(nu)
    g_degree, n_degree = g_rank - 1, n_rank - 1
    lhs = ht_operator(schouten(gamma, nu))(alpha)
    first = graded_commutator(ht_operator(gamma), g_rank, lt_operator(nu, volume), n_degree)
    last_argument, last_rank = (gamma, g_rank) if repeat_gamma else (nu, n_rank)
    second = graded_commutator(
        lt_operator(gamma, volume), g_degree, ht_operator(last_argument), last_rank
    )
    residual = lhs - first(alpha) - second(alpha) * sign(g_degree)
    return residual.truncate(min(gamma.ucap, nu.ucap, alpha.ucap) - 1)
