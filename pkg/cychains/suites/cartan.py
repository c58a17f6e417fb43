"""Cartan calculus identities: Schouten bracket, contraction, divergence, integration."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cychains.cartan import (
    DiffForm,
    DiffOp,
    MultiVector,
    VTop,
    contract,
    contract_volume,
    de_rham,
    divergence,
    form_wedge,
    formal_adjoint_diffop,
    integrate,
    lie_derivative,
    pair_vt_form,
    schouten,
    wedge,
)
from cychains.core import LaurentPoly, sign
from cychains.suites.report import Identity
from cychains.utils.sampling import standard_volumes

if TYPE_CHECKING:  # pragma: no cover
    from cychains.cartan import VolumeForm
    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler


def rank_of(gamma: MultiVector | DiffForm) -> int:
    ranks = gamma.ranks()
    return max(ranks) if ranks else 0


def schouten_antisymmetry(gamma: MultiVector, nu: MultiVector) -> bool:
    p, q = rank_of(gamma) - 1, rank_of(nu) - 1
    return (schouten(gamma, nu) + schouten(nu, gamma) * sign(p * q)).is_zero()


def schouten_jacobi(gamma: MultiVector, nu: MultiVector, mu: MultiVector) -> bool:
    p, q = rank_of(gamma) - 1, rank_of(nu) - 1
    left = schouten(gamma, schouten(nu, mu))
    right = schouten(schouten(gamma, nu), mu) + schouten(nu, schouten(gamma, mu)) * sign(p * q)
    return (left - right).is_zero()


def contraction_bracket(gamma: MultiVector, nu: MultiVector, alpha: DiffForm) -> bool:
    """`iota_[g,n] = [iota_g, L_n] = (-1)^|g| [L_g, iota_n]` on `alpha`."""
    r, s = rank_of(gamma), rank_of(nu)
    expected = contract(schouten(gamma, nu), alpha)
    first = contract(gamma, lie_derivative(nu, alpha)) - lie_derivative(
        nu, contract(gamma, alpha)
    ) * sign(r * (s - 1))
    second = (
        lie_derivative(gamma, contract(nu, alpha))
        - contract(nu, lie_derivative(gamma, alpha)) * sign((r - 1) * s)
    ) * sign(r - 1)
    return (expected - first).is_zero() and (expected - second).is_zero()


def divergence_derivation(volume: VolumeForm, gamma: MultiVector, nu: MultiVector) -> bool:
    """`div [g, n] = [div g, n] + (-1)^(k-1) [g, div n]`."""
    k = rank_of(gamma)
    left = divergence(volume, schouten(gamma, nu))
    right = schouten(divergence(volume, gamma), nu) + schouten(
        gamma, divergence(volume, nu)
    ) * sign(k - 1)
    return (left - right).is_zero()


def divergence_bv(volume: VolumeForm, gamma: MultiVector, nu: MultiVector) -> bool:
    """`div` generates the bracket: the failure of the Leibniz rule is `-(-1)^k [g, n]`."""
    k = rank_of(gamma)
    defect = (
        divergence(volume, wedge(gamma, nu))
        - wedge(divergence(volume, gamma), nu)
        - wedge(gamma, divergence(volume, nu)) * sign(k)
    )
    return (defect + schouten(gamma, nu) * sign(k)).is_zero()


def divergence_square(volume: VolumeForm, gamma: MultiVector) -> bool:
    return divergence(volume, divergence(volume, gamma)).is_zero()


def divergence_definition(volume: VolumeForm, gamma: MultiVector) -> bool:
    """`iota_(div g) Omega = d iota_g Omega`."""
    return (
        contract_volume(divergence(volume, gamma), volume)
        - de_rham(contract_volume(gamma, volume))
    ).is_zero()


def _integral(volume: VolumeForm, function: DiffForm) -> object:
    return integrate(form_wedge(function.homogeneous(0), volume.as_form()))


def integral_contraction(volume: VolumeForm, gamma: MultiVector, alpha: DiffForm) -> bool:
    """`int (iota_g alpha) Omega = int alpha ^ iota_g Omega` for equal ranks."""
    left = _integral(volume, contract(gamma, alpha))
    right = integrate(form_wedge(alpha, contract_volume(gamma, volume)))
    return left == right


def integral_lie(volume: VolumeForm, gamma: MultiVector, alpha: DiffForm) -> bool:
    """`int (L_g alpha) Omega = -int (iota_(div g) alpha) Omega`."""
    left = _integral(volume, lie_derivative(gamma, alpha))
    right = _integral(volume, contract(divergence(volume, gamma), alpha))
    return left == -right


def contraction_wedge(gamma: MultiVector, nu: MultiVector, alpha: DiffForm) -> bool:
    """`iota_(g ^ n) = iota_g iota_n`."""
    return (contract(wedge(gamma, nu), alpha) - contract(gamma, contract(nu, alpha))).is_zero()


def adjoint_integration_by_parts(
    volume: VolumeForm, operator: DiffOp, f: LaurentPoly, g: LaurentPoly
) -> bool:
    """`int (D f) g Omega = int f (D' g) Omega`."""
    adjoint = formal_adjoint_diffop(operator, volume)
    left = _integral(volume, DiffForm.function(operator(f) * g))
    right = _integral(volume, DiffForm.function(f * adjoint(g)))
    return left == right


def separating_form(x: VTop) -> DiffForm:
    """A monomial form pairing nontrivially with the leading term of `x`."""
    indices = min(x.mv.components)
    exponent = min(x.mv.components[indices].terms)
    dual = tuple(-e - k for e, k in zip(exponent, x.vol.exponent))
    return DiffForm({indices: LaurentPoly.monomial(dual)}, x.mv.dim)


def pairing_separates(x: VTop) -> bool:
    return x.is_zero() or pair_vt_form(x, separating_form(x)) != 0


def identities(config: SuiteConfig) -> list[Identity]:
    dim = config.dim

    def _operator(sampler: Sampler) -> DiffOp:
        terms: dict[tuple[int, ...], LaurentPoly] = {}
        for _ in range(sampler.integer(1, 2)):
            alpha = sampler.multi_index(max_order=2, nonzero=False)
            terms[alpha] = terms.get(alpha, LaurentPoly.zero(dim)) + sampler.laurent(1)
        return DiffOp(terms, dim)

    def _ranked(sampler: Sampler, low: int = 0) -> MultiVector:
        return sampler.multivector(sampler.rank(low))

    checks = [
        Identity(
            "cartan.schouten.antisymmetry",
            "schouten",
            lambda s: (_ranked(s), _ranked(s)),
            schouten_antisymmetry,
            arity=2,
        ),
        Identity(
            "cartan.schouten.jacobi",
            "schouten",
            lambda s: (_ranked(s), _ranked(s), _ranked(s)),
            schouten_jacobi,
            arity=3,
        ),
        Identity(
            "cartan.contraction.bracket",
            "cartan calculus",
            lambda s: (_ranked(s), _ranked(s), s.form()),
            contraction_bracket,
            arity=3,
        ),
        Identity(
            "cartan.contraction.wedge",
            "cartan calculus",
            lambda s: (_ranked(s), _ranked(s), s.form()),
            contraction_wedge,
            arity=3,
        ),
    ]
    for index, volume in enumerate(standard_volumes(dim)):

        def _with_volume(sample, volume=volume):
            return lambda s: (volume, *sample(s))

        def _same_rank(s: Sampler, shift: int = 0) -> tuple[MultiVector, DiffForm]:
            rank = s.rank(max(shift, 0))
            return s.multivector(rank), s.form(rank - shift)

        checks.extend(
            [
                Identity(
                    f"cartan.divergence.derivation@rho{index}",
                    "divergence",
                    _with_volume(lambda s: (_ranked(s), _ranked(s))),
                    divergence_derivation,
                    arity=2,
                ),
                Identity(
                    f"cartan.divergence.bv@rho{index}",
                    "divergence",
                    _with_volume(lambda s: (_ranked(s), _ranked(s))),
                    divergence_bv,
                    arity=2,
                ),
                Identity(
                    f"cartan.divergence.square@rho{index}",
                    "divergence",
                    _with_volume(lambda s: (_ranked(s),)),
                    divergence_square,
                    arity=1,
                ),
                Identity(
                    f"cartan.divergence.definition@rho{index}",
                    "divergence",
                    _with_volume(lambda s: (_ranked(s),)),
                    divergence_definition,
                    arity=1,
                ),
                Identity(
                    f"cartan.integral.contraction@rho{index}",
                    "integration",
                    _with_volume(_same_rank),
                    integral_contraction,
                    arity=2,
                ),
                Identity(
                    f"cartan.integral.lie@rho{index}",
                    "integration",
                    _with_volume(lambda s: _same_rank(s, 1)),
                    integral_lie,
                    arity=2,
                ),
                Identity(
                    f"cartan.adjoint.integration_by_parts@rho{index}",
                    "integration",
                    _with_volume(lambda s: (_operator(s), s.laurent(), s.laurent())),
                    adjoint_integration_by_parts,
                    arity=3,
                ),
                Identity(
                    f"cartan.pairing.separates@rho{index}",
                    "pairing",
                    lambda s, volume=volume: (VTop(_ranked(s), volume),),
                    pairing_separates,
                    arity=1,
                ),
            ]
        )
    return checks
