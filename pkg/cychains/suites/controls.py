"""Negative controls: identities with planted sign errors that must fail.

A control that passes means the corresponding suite cannot tell a right sign from a
wrong one on the sampled inputs.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from cychains.cartan import lie_derivative, schouten
from cychains.extended import extended_b
from cychains.linfty import (
    FamilyKind,
    Graded,
    TaylorFamily,
    module_axiom_residual,
    module_to_linfty,
    polyvector_dgla,
    symmetry_residual,
)
from cychains.suites.report import Identity
from cychains.suites.uactions import h1_intertwines, sample_h1_inputs
from cychains.uactions import action_Lt_from_commutator, h_condition_bracket, u_de_rham
from cychains.utils.sampling import standard_volumes

if TYPE_CHECKING:  # pragma: no cover
    from cychains.cartan import DiffForm, MultiVector, VolumeForm
    from cychains.core import USeries
    from cychains.extended import EElement
    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler


def unsigned_bracket_family() -> TaylorFamily:
    """`Q_2(x1, x2) = -[x1, x2]`, missing the `(-1)^|x1|`."""
    return TaylorFamily(
        FamilyKind.ALGEBRA,
        {2: lambda xs, m: schouten(xs[0].value, xs[1].value) * -1},
        "unsigned",
    )


def unsigned_bracket_symmetric(x1: Graded, x2: Graded) -> bool:
    return symmetry_residual(unsigned_bracket_family(), [x1, x2], [1, 0]).is_zero()


def flipped_wrap_square(e: EElement) -> bool:
    return extended_b(extended_b(e, wrap_sign=-1), wrap_sign=-1).is_zero()


def lie_only_action(gamma: USeries[MultiVector], alpha: USeries[DiffForm]) -> USeries[DiffForm]:
    """`sum_j u^j L_(gamma_j)`: `L^(1)` without its `iota_div` term."""
    return gamma.bilinear(alpha, lie_derivative)


def lie_only_from_commutator(
    volume: VolumeForm, gamma: USeries[MultiVector], alpha: USeries[DiffForm]
) -> bool:
    expected = action_Lt_from_commutator(1, gamma, alpha, volume)
    return (lie_only_action(gamma, alpha).truncate(expected.ucap) - expected).is_zero()


def lie_only_module(volume: VolumeForm, xs: list[Graded], alpha: Graded) -> bool:
    qt = module_to_linfty(u_de_rham, lie_only_action, "forms(lie only)")
    return module_axiom_residual(polyvector_dgla(volume), qt, xs, alpha).is_zero()


def repeated_h_bracket(
    volume: VolumeForm,
    gamma: USeries[MultiVector],
    nu: USeries[MultiVector],
    alpha: USeries[DiffForm],
) -> bool:
    return h_condition_bracket(gamma, nu, alpha, volume, repeat_gamma=True).is_zero()


def identities(config: SuiteConfig) -> list[Identity]:
    volume = standard_volumes(config.dim)[-1]

    def _graded(s: Sampler, rank: int) -> Graded:
        rank = min(rank, s.dim)
        return Graded(s.umultivector(rank), rank - 1)

    return [
        Identity(
            "controls.linfty.unsigned_bracket",
            "control",
            lambda s: (_graded(s, 0), _graded(s, 1)),
            unsigned_bracket_symmetric,
            control=True,
            arity=2,
        ),
        Identity(
            "controls.extended.wrap_sign",
            "control",
            lambda s: (s.eelement(s.rank(), 0),),
            flipped_wrap_square,
            control=True,
            arity=1,
        ),
        Identity(
            "controls.uactions.missing_divergence",
            "control",
            lambda s: (volume, s.umultivector(s.rank(1)), s.uform()),
            lie_only_from_commutator,
            control=True,
            arity=2,
        ),
        Identity(
            "controls.linfty.missing_divergence",
            "control",
            lambda s: (volume, [_graded(s, s.rank(1))], Graded(s.uform(0), 0)),
            lie_only_module,
            control=True,
            arity=1,
        ),
        Identity(
            "controls.uactions.h_bracket_repeat",
            "control",
            lambda s: (
                volume,
                s.umultivector(s.rank(1)),
                s.umultivector(s.rank(1)),
                s.uform(),
            ),
            repeated_h_bracket,
            control=True,
            ucap=max(min(config.ucap, 3), 1),
            arity=3,
        ),
        Identity(
            "controls.uactions.h1_opposite_sign",
            "control",
            lambda s: (volume, *sample_h1_inputs(s, max(config.arity_cap, 1))),
            lambda volume, gammas, alpha: h1_intertwines(volume, gammas, alpha, s=1),
            control=True,
            ucap=3,
            arity=min(max(config.arity_cap, 1), 2),
        ),
    ]
