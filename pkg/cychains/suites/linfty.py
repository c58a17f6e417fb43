"""L-infinity identities: coderivation squares, module and morphism relations, adjoints."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import TYPE_CHECKING

from cychains.cartan import MultiVector, VTop, pair_vt_form_series
from cychains.core import LaurentPoly, USeries
from cychains.extended import embed_cochain, hkr_vt
from cychains.hochschild import HochChain, negative_cyclic_differential
from cychains.linfty import (
    HKR_ADJOINT_SIGN,
    FamilyKind,
    Graded,
    TaylorFamily,
    adjoint_action_module,
    adjoint_module,
    adjoint_morphism,
    chains_module,
    chains_over_polyvectors,
    chains_window_pairing,
    coderivation_square_residual,
    cochain_dgla,
    forms_module,
    forms_window_pairing,
    h1_morphism,
    hkr_morphism,
    identity_morphism,
    module_axiom_residual,
    module_to_linfty,
    morphism_residual,
    polyvector_dgla,
    reinterpret_psm,
    reinterpreted_target,
    symmetry_residual,
    toy_hkr_psm,
    trivial_module,
    vt_adjoint_action_module,
    vt_module,
)
from cychains.suites.report import Identity
from cychains.utils.sampling import Sampler, standard_volumes

if TYPE_CHECKING:  # pragma: no cover
    from typing import Callable, Sequence

    from cychains.cartan import VolumeForm
    from cychains.linfty import PairingHandle
    from cychains.utils.config import SuiteConfig

FORM_T_VALUES = (Fraction(0), Fraction(1), Fraction(1, 2))

ADJOINT_WINDOW = (-2, 2)
"""Exponents of the monomial forms on which adjoints are solved."""

SAMPLE_WINDOW = (-1, 1)
"""Exponents of the inputs of adjoint checks, so that the adjoint window sees them."""


@lru_cache(maxsize=None)
def window_pairing(volume: VolumeForm, lo: int, hi: int, ucap: int) -> PairingHandle:
    return forms_window_pairing(volume, lo, hi, ucap)


@lru_cache(maxsize=None)
def chain_window_pairing(dim: int, ucap: int) -> PairingHandle:
    return chains_window_pairing(dim, *SAMPLE_WINDOW, dim, ucap)


def plain_chains_module() -> TaylorFamily:
    """`(C(A)[[u]], b_H + u B)` with the zero action."""
    return module_to_linfty(negative_cyclic_differential, None, "chains-trivial")


# Predicates


def coderivation_squares_to_zero(q: TaylorFamily, xs: Sequence[Graded]) -> bool:
    return coderivation_square_residual(q, xs).is_zero()


def module_relations_hold(
    q: TaylorFamily, qt: TaylorFamily, xs: Sequence[Graded], m: Graded
) -> bool:
    return module_axiom_residual(q, qt, xs, m).is_zero()


def morphism_relations_hold(
    phi: TaylorFamily,
    q: TaylorFamily,
    source: TaylorFamily,
    target: TaylorFamily,
    xs: Sequence[Graded],
    m: Graded,
) -> bool:
    return morphism_residual(phi, q, source, target, xs, m).is_zero()


def graded_symmetric(
    family: TaylorFamily,
    xs: Sequence[Graded],
    permutation: Sequence[int],
    m: Graded | None = None,
) -> bool:
    return symmetry_residual(family, xs, permutation, m).is_zero()


def adjoint_is_dual_action(
    t: Fraction,
    volume: VolumeForm,
    pairing: PairingHandle,
    xs: Sequence[Graded],
    m_hat: Graded,
) -> bool:
    """The adjoint of `L^(t)` on forms is the dual action on `VT[[u]]`, on the window."""
    expected = pairing.restrict(vt_module(t, volume)(xs, m_hat))
    actual = adjoint_module(forms_module(t, volume), pairing)(xs, m_hat)
    return (expected - actual).is_zero()


def double_adjoint_is_original(
    qt: TaylorFamily, pairing: PairingHandle, xs: Sequence[Graded], m: Graded
) -> bool:
    """Dualizing twice returns the original family on the window; the sign is `+1`."""
    transposed = pairing.transposed()
    twice = adjoint_module(adjoint_module(qt, pairing), transposed)
    return (transposed.restrict(qt(xs, m)) - twice(xs, m)).is_zero()


def identity_adjoint_is_identity(pairing: PairingHandle, n_hat: Graded) -> bool:
    adjoint = adjoint_morphism(identity_morphism(), pairing, pair_vt_form_series)
    return (pairing.restrict(n_hat.value) - adjoint([], n_hat)).is_zero()


def hkr_adjoint_is_hkr_vt(window: PairingHandle, n_hat: Graded) -> bool:
    """The adjoint of the HKR map sends `nu Omega` to `hkr_vt(nu Omega) / k!` on the window."""
    adjoint = adjoint_morphism(hkr_morphism(), window, pair_vt_form_series)([], n_hat)
    expected = window.restrict(n_hat.value.map(lambda x: embed_cochain(hkr_vt(x))))
    scale = Fraction(HKR_ADJOINT_SIGN, factorial(n_hat.degree + 1))
    return (adjoint - expected * scale).is_zero()


def toy_reinterpretation_is_hkr(volume: VolumeForm, gamma: MultiVector, c: HochChain) -> bool:
    """`gamma Omega` goes to `(a0, .., ak) -> a0 iota_gamma(da1 ^ .. ^ dak) Omega` at `u^0`."""
    x = VTop(gamma, volume)
    ranks = gamma.ranks()
    element = Graded(USeries.constant(x, 1), (max(ranks) if ranks else 0) - 1)
    functional = reinterpret_psm(toy_hkr_psm(), volume)([], element)
    expected = embed_cochain(hkr_vt(x)).evaluate_chain(c)
    return (functional(c).coefficient(0) - expected).is_zero()


def residual_transport(
    volume: VolumeForm,
    v: TaylorFamily,
    xs: Sequence[Graded],
    element: Graded,
    test_chains: Sequence[Graded],
) -> bool:
    """Whenever `V` satisfies the morphism relations on the test chains, so does `V*`."""
    q = polyvector_dgla(volume)
    source = chains_over_polyvectors()
    lifted = Graded(element.value.map(lambda c: c.mv).times_u(), element.degree + 2)
    for chain in test_chains:
        residual = morphism_residual(v, q, source, trivial_module(volume), [*xs, lifted], chain)
        if not residual.is_zero():
            return True
    transported = morphism_residual(
        reinterpret_psm(v, volume),
        q,
        vt_adjoint_action_module(q, volume),
        reinterpreted_target(source, element.value.ucap),
        xs,
        element,
    )
    return transported.is_zero([chain.value for chain in test_chains])


def hkr_is_chain_map(volume: VolumeForm, m: Graded) -> bool:
    return morphism_relations_hold(
        hkr_morphism(),
        polyvector_dgla(volume),
        plain_chains_module(),
        forms_module(0, volume),
        [],
        m,
    )


def hkr_arity_one_vanishes(volume: VolumeForm, dim: int) -> bool:
    """Whether HKR also satisfies the arity-1 relation, on one fixed input.

    The input is `t^(1,..,1) d1` and the chain `t^(1,..,1) (x) t1^2 t2^-1 .. td^-1`.
    """
    ones = LaurentPoly.monomial((1,) * dim)
    vector = MultiVector.basis((1,), dim, ones)
    chain = HochChain.tensor(ones, LaurentPoly.monomial((2,) + (-1,) * (dim - 1)))
    return morphism_relations_hold(
        hkr_morphism(),
        polyvector_dgla(volume),
        plain_chains_module(),
        forms_module(0, volume),
        [Graded(USeries.constant(vector, 2), 0)],
        Graded(USeries.constant(chain, 2), -1),
    )


# Inputs


def polyvector_input(s: Sampler, max_rank: int | None = None) -> Graded:
    """A rank-homogeneous multivector series; rank `r` has degree `r - 1`."""
    rank = s.integer(0, s.dim if max_rank is None else min(max_rank, s.dim))
    return Graded(s.umultivector(rank), rank - 1)


def cochain_input(s: Sampler) -> Graded:
    arity = s.integer(0, 2)
    return Graded(s.cochain(arity), arity - 1)


def form_input(s: Sampler) -> Graded:
    rank = s.rank()
    return Graded(s.uform(rank), -rank)


def vt_input(s: Sampler, volume: VolumeForm) -> Graded:
    """A `VT[[u]]` series shifted by `t^-k` for `Omega = c t^k omega_std`."""
    rank = s.rank()
    shift = LaurentPoly.monomial(tuple(-k for k in volume.exponent))
    return Graded(s.uvtop(volume, rank).map(lambda x: x * shift), rank - 1)


def chain_input(s: Sampler) -> Graded:
    length = s.integer(0, 2)
    return Graded(s.uchain(length), -length)


def _inputs(
    s: Sampler, draw: Callable[[Sampler], Graded], low: int, high: int
) -> list[Graded]:
    return [draw(s) for _ in range(s.integer(low, high))]


def _small(s: Sampler) -> Sampler:
    return Sampler(s.draw, s.dim, SAMPLE_WINDOW, s.ucap)


def identities(config: SuiteConfig) -> list[Identity]:
    top = max(config.arity_cap, 1)
    checks: list[Identity] = []
    cochains = cochain_dgla()

    checks.extend(
        [
            Identity(
                "linfty.cochains.square",
                "coderivation",
                lambda s: (cochains, _inputs(s, cochain_input, 1, top + 1)),
                coderivation_squares_to_zero,
                trials=20,
                arity=top + 1,
            ),
            Identity(
                "linfty.cochains.symmetry",
                "coderivation",
                lambda s: (
                    cochains,
                    *_with_permutation(s, [cochain_input(s), cochain_input(s)]),
                ),
                graded_symmetric,
                arity=2,
            ),
            Identity(
                "linfty.chains.module",
                "module",
                lambda s: (
                    cochains,
                    chains_module(),
                    _inputs(s, cochain_input, 0, top),
                    chain_input(s),
                ),
                module_relations_hold,
                trials=20,
                arity=top,
            ),
            Identity(
                "linfty.identity.morphism",
                "morphism",
                lambda s: (
                    identity_morphism(),
                    cochains,
                    chains_module(),
                    chains_module(),
                    _inputs(s, cochain_input, 0, top),
                    chain_input(s),
                ),
                morphism_relations_hold,
                trials=10,
                arity=top,
            ),
        ]
    )

    for index, volume in enumerate(standard_volumes(config.dim)):
        q = polyvector_dgla(volume)
        suffix = f"@rho{index}"
        modules = {
            "trivial": trivial_module(volume),
            "adjoint": adjoint_action_module(q),
            "vt_adjoint": vt_adjoint_action_module(q, volume),
        }
        checks.extend(
            [
                Identity(
                    f"linfty.polyvectors.square{suffix}",
                    "coderivation",
                    lambda s, q=q: (q, _inputs(s, polyvector_input, 1, top + 1)),
                    coderivation_squares_to_zero,
                    trials=20,
                    arity=top + 1,
                ),
                Identity(
                    f"linfty.polyvectors.symmetry{suffix}",
                    "coderivation",
                    lambda s, q=q: (
                        q,
                        *_with_permutation(s, [polyvector_input(s), polyvector_input(s)]),
                    ),
                    graded_symmetric,
                    arity=2,
                ),
                Identity(
                    f"linfty.module.trivial{suffix}",
                    "module",
                    lambda s, q=q, qt=modules["trivial"]: (
                        q,
                        qt,
                        _inputs(s, polyvector_input, 0, top),
                        polyvector_input(s),
                    ),
                    module_relations_hold,
                    arity=top,
                ),
                Identity(
                    f"linfty.module.adjoint{suffix}",
                    "module",
                    lambda s, q=q, qt=modules["adjoint"]: (
                        q,
                        qt,
                        _inputs(s, polyvector_input, 0, top),
                        polyvector_input(s),
                    ),
                    module_relations_hold,
                    trials=20,
                    arity=top,
                ),
                Identity(
                    f"linfty.module.vt_adjoint{suffix}",
                    "module",
                    lambda s, q=q, qt=modules["vt_adjoint"], volume=volume: (
                        q,
                        qt,
                        _inputs(s, polyvector_input, 0, top),
                        vt_input(s, volume),
                    ),
                    module_relations_hold,
                    trials=20,
                    arity=top,
                ),
                Identity(
                    f"linfty.module.chains_over_polyvectors{suffix}",
                    "module",
                    lambda s, q=q: (
                        q,
                        chains_over_polyvectors(),
                        *_hkr_pullback_inputs(s, top),
                    ),
                    module_relations_hold,
                    trials=20,
                    arity=min(top, 2),
                ),
                Identity(
                    f"linfty.h1.symmetry{suffix}",
                    "morphism",
                    lambda s: (
                        h1_morphism(),
                        *_with_permutation(s, [polyvector_input(s), polyvector_input(s)]),
                        form_input(s),
                    ),
                    graded_symmetric,
                    ucap=3,
                    arity=2,
                ),
                Identity(
                    f"linfty.hkr.chain_map{suffix}",
                    "morphism",
                    lambda s, volume=volume: (volume, chain_input(s)),
                    hkr_is_chain_map,
                    arity=0,
                    details=lambda volume=volume: {
                        "arity_1_vanishes": hkr_arity_one_vanishes(volume, config.dim)
                    },
                ),
                Identity(
                    f"linfty.reinterpret.toy_hkr{suffix}",
                    "reinterpretation",
                    lambda s, volume=volume: (
                        volume,
                        s.multivector(s.rank()),
                        s.chain(s.integer(0, s.dim)),
                    ),
                    toy_reinterpretation_is_hkr,
                    arity=1,
                ),
                Identity(
                    f"linfty.reinterpret.transport_zero{suffix}",
                    "reinterpretation",
                    lambda s, volume=volume: (
                        volume,
                        TaylorFamily.zero(FamilyKind.MORPHISM),
                        _inputs(s, polyvector_input, 0, 1),
                        vt_input(s, volume),
                        [chain_input(s), chain_input(s)],
                    ),
                    residual_transport,
                    trials=10,
                    arity=1,
                ),
                Identity(
                    f"linfty.reinterpret.transport_toy{suffix}",
                    "reinterpretation",
                    lambda s, volume=volume: (
                        volume,
                        toy_hkr_psm(),
                        [],
                        vt_input(s, volume),
                        [chain_input(s), chain_input(s)],
                    ),
                    residual_transport,
                    trials=10,
                    arity=0,
                    ucap=1,
                ),
            ]
        )
        for t in FORM_T_VALUES:
            checks.extend(
                [
                    Identity(
                        f"linfty.module.forms[t={t}]{suffix}",
                        "module",
                        lambda s, q=q, qt=forms_module(t, volume): (
                            q,
                            qt,
                            _inputs(s, polyvector_input, 0, top),
                            form_input(s),
                        ),
                        module_relations_hold,
                        trials=20,
                        arity=top,
                    ),
                    Identity(
                        f"linfty.module.vt[t={t}]{suffix}",
                        "module",
                        lambda s, q=q, qt=vt_module(t, volume), volume=volume: (
                            q,
                            qt,
                            _inputs(s, polyvector_input, 0, top),
                            vt_input(s, volume),
                        ),
                        module_relations_hold,
                        trials=20,
                        arity=top,
                    ),
                    Identity(
                        f"linfty.adjoint.forms[t={t}]{suffix}",
                        "adjoint",
                        lambda s, t=t, volume=volume: (
                            t,
                            volume,
                            window_pairing(volume, *ADJOINT_WINDOW, 2),
                            _inputs(_small(s), polyvector_input, 0, 1),
                            vt_input(_small(s), volume),
                        ),
                        adjoint_is_dual_action,
                        trials=5,
                        arity=1,
                        ucap=2,
                    ),
                ]
            )
        checks.append(
            Identity(
                f"linfty.adjoint.identity{suffix}",
                "adjoint",
                lambda s, volume=volume: (
                    window_pairing(volume, *ADJOINT_WINDOW, 2),
                    vt_input(_small(s), volume),
                ),
                identity_adjoint_is_identity,
                trials=5,
                ucap=2,
                arity=0,
            )
        )
        if config.dim <= 2:
            checks.append(
                Identity(
                    f"linfty.adjoint.double{suffix}",
                    "adjoint",
                    lambda s, volume=volume: (
                        forms_module(1, volume),
                        window_pairing(volume, *SAMPLE_WINDOW, 1),
                        _inputs(_small(s), polyvector_input, 0, 1),
                        form_input(_small(s)),
                    ),
                    double_adjoint_is_original,
                    trials=3,
                    arity=1,
                    ucap=1,
                )
            )
            checks.append(
                Identity(
                    f"linfty.adjoint.hkr{suffix}",
                    "adjoint",
                    lambda s, volume=volume: (
                        chain_window_pairing(config.dim, 1),
                        vt_input(_small(s), volume),
                    ),
                    hkr_adjoint_is_hkr_vt,
                    trials=3,
                    arity=0,
                    ucap=1,
                    details=lambda: {"sign": HKR_ADJOINT_SIGN, "scale": "1/n!"},
                )
            )
    return checks


def _with_permutation(s: Sampler, xs: list[Graded]) -> tuple[list[Graded], list[int]]:
    return xs, s.permutation(len(xs))


def _hkr_pullback_inputs(s: Sampler, top: int) -> tuple[list[Graded], Graded]:
    """Polyvector inputs for the HKR pullback; from arity 2 on only ranks up to 1.

    The HKR cochain map respects brackets of functions and vector fields only.
    """
    arity = s.integer(0, min(top, 2))
    max_rank = None if arity < 2 else 1
    return [polyvector_input(s, max_rank) for _ in range(arity)], chain_input(s)
