"""Identities of the `L^(t)` family, its homotopies `h^(t)` and the morphism `H^(1)`."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from cychains.cartan import pair_vt_form_series, schouten
from cychains.core import sign
from cychains.linfty import (
    Graded,
    forms_module,
    h1_morphism,
    morphism_residual,
    polyvector_dgla,
)
from cychains.suites.report import Identity
from cychains.uactions import (
    H1_SIGN,
    H1_SIGN_CHANNELS,
    action_Lt,
    action_Lt_dual,
    action_Lt_from_commutator,
    dual_differential,
    h_condition_bracket,
    h_condition_differential,
    rank_of,
    u_de_rham,
    u_divergence,
)
from cychains.utils.sampling import standard_volumes

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any

    from cychains.cartan import DiffForm, MultiVector, VolumeForm, VTop
    from cychains.core import USeries
    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler

T_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2))


def action_from_commutator(
    t: Fraction, volume: VolumeForm, gamma: USeries[MultiVector], alpha: USeries[DiffForm]
) -> bool:
    """`L^(t)_g = (1/u)([u d, iota^(t)_g] + iota^(t)_(u div g))`."""
    expected = action_Lt_from_commutator(t, gamma, alpha, volume)
    direct = action_Lt(t, gamma, alpha, volume).truncate(expected.ucap)
    return (direct - expected).is_zero()


def action_differential(
    t: Fraction, volume: VolumeForm, gamma: USeries[MultiVector], alpha: USeries[DiffForm]
) -> bool:
    """`[u d, L^(t)_g] = L^(t)_(u div g)`."""
    degree = rank_of(gamma) - 1
    commutator = u_de_rham(action_Lt(t, gamma, alpha, volume)) - action_Lt(
        t, gamma, u_de_rham(alpha), volume
    ) * sign(degree)
    return (commutator - action_Lt(t, u_divergence(volume, gamma), alpha, volume)).is_zero()


def action_bracket(
    t: Fraction,
    volume: VolumeForm,
    gamma: USeries[MultiVector],
    nu: USeries[MultiVector],
    alpha: USeries[DiffForm],
) -> bool:
    """`[L^(t)_g, L^(t)_n] = L^(t)_[g,n]`."""
    g, n = rank_of(gamma) - 1, rank_of(nu) - 1
    commutator = action_Lt(t, gamma, action_Lt(t, nu, alpha, volume), volume) - action_Lt(
        t, nu, action_Lt(t, gamma, alpha, volume), volume
    ) * sign(g * n)
    return (commutator - action_Lt(t, schouten(gamma, nu), alpha, volume)).is_zero()


def dual_action_adjoint(
    t: Fraction,
    volume: VolumeForm,
    gamma: USeries[MultiVector],
    x: USeries[VTop],
    alpha: USeries[DiffForm],
) -> bool:
    """`<L^(t)_g (n Omega), a> = -(-1)^(|n||g|) <n Omega, L^(t)_g a>`."""
    g, n = rank_of(gamma) - 1, rank_of(x.map(lambda c: c.mv)) - 1
    left = pair_vt_form_series(action_Lt_dual(t, gamma, x, volume), alpha)
    right = pair_vt_form_series(x, action_Lt(t, gamma, alpha, volume))
    return all(a == -sign(n * g) * b for a, b in zip(left, right))


def dual_differential_adjoint(x: USeries[VTop], alpha: USeries[DiffForm]) -> bool:
    """`delta^2 = 0` and `<delta(n Omega), a> = -(-1)^|n| <n Omega, u d a>`."""
    n = rank_of(x.map(lambda c: c.mv)) - 1
    if not dual_differential(dual_differential(x)).is_zero():
        return False
    left = pair_vt_form_series(dual_differential(x), alpha)
    right = pair_vt_form_series(x, u_de_rham(alpha))
    return all(a == -sign(n) * b for a, b in zip(left, right))


def h_differential(
    volume: VolumeForm, gamma: USeries[MultiVector], alpha: USeries[DiffForm]
) -> bool:
    return h_condition_differential(gamma, alpha, volume).is_zero()


def h_bracket(
    volume: VolumeForm,
    gamma: USeries[MultiVector],
    nu: USeries[MultiVector],
    alpha: USeries[DiffForm],
) -> bool:
    return h_condition_bracket(gamma, nu, alpha, volume).is_zero()


def h1_intertwines(
    volume: VolumeForm,
    gammas: tuple[USeries[MultiVector], ...],
    alpha: USeries[DiffForm],
    s: int = H1_SIGN,
) -> bool:
    """`H^(1)` with sign channel `s` is a morphism from the `L^(0)` to the `L^(1)` module."""
    xs = [Graded(gamma, rank_of(gamma) - 1) for gamma in gammas]
    m = Graded(alpha, -rank_of(alpha))
    residual = morphism_residual(
        h1_morphism(s, max_arity=len(xs)),
        polyvector_dgla(volume),
        forms_module(0, volume),
        forms_module(1, volume),
        xs,
        m,
    )
    return residual.is_zero()


def sample_h1_inputs(s: Sampler, arity_cap: int) -> tuple[Any, ...]:
    """Rank-homogeneous multivector series and a rank-homogeneous form series."""
    arity = s.integer(0, min(arity_cap, 2))
    gammas = tuple(s.umultivector(s.rank()) for _ in range(arity))
    return gammas, s.uform(s.rank())


def identities(config: SuiteConfig) -> list[Identity]:
    ucap = max(min(config.ucap, 3), 1)
    checks = []
    for index, volume in enumerate(standard_volumes(config.dim)):
        for t in T_VALUES:
            checks.append(
                Identity(
                    f"uactions.action.commutator[t={t}]@rho{index}",
                    "u-actions",
                    lambda s, volume=volume, t=t: (t, volume, s.umultivector(), s.uform()),
                    action_from_commutator,
                    arity=2,
                )
            )
            checks.extend(
                [
                    Identity(
                        f"uactions.action.differential[t={t}]@rho{index}",
                        "u-actions",
                        lambda s, volume=volume, t=t: (
                            t,
                            volume,
                            s.umultivector(s.rank()),
                            s.uform(),
                        ),
                        action_differential,
                        arity=2,
                    ),
                    Identity(
                        f"uactions.action.bracket[t={t}]@rho{index}",
                        "u-actions",
                        lambda s, volume=volume, t=t: (
                            t,
                            volume,
                            s.umultivector(s.rank()),
                            s.umultivector(s.rank()),
                            s.uform(),
                        ),
                        action_bracket,
                        trials=20,
                        ucap=ucap,
                        arity=3,
                    ),
                    Identity(
                        f"uactions.dual.adjoint[t={t}]@rho{index}",
                        "dual action",
                        lambda s, volume=volume, t=t: (
                            t,
                            volume,
                            s.umultivector(s.rank()),
                            s.uvtop(volume, s.rank()),
                            s.uform(),
                        ),
                        dual_action_adjoint,
                        arity=3,
                    ),
                ]
            )
        checks.extend(
            [
                Identity(
                    f"uactions.dual.differential@rho{index}",
                    "dual action",
                    lambda s, volume=volume: (s.uvtop(volume, s.rank()), s.uform()),
                    dual_differential_adjoint,
                    arity=2,
                ),
                Identity(
                    f"uactions.homotopy.differential@rho{index}",
                    "u-actions",
                    lambda s, volume=volume: (volume, s.umultivector(s.rank()), s.uform()),
                    h_differential,
                    trials=20,
                    ucap=ucap,
                    arity=2,
                ),
                Identity(
                    f"uactions.homotopy.bracket@rho{index}",
                    "u-actions",
                    lambda s, volume=volume: (
                        volume,
                        s.umultivector(s.rank()),
                        s.umultivector(s.rank()),
                        s.uform(),
                    ),
                    h_bracket,
                    trials=20,
                    ucap=ucap,
                    arity=3,
                ),
                Identity(
                    f"uactions.h1.morphism@rho{index}",
                    "u-actions",
                    lambda s, volume=volume: (
                        volume,
                        *sample_h1_inputs(s, config.arity_cap),
                    ),
                    h1_intertwines,
                    trials=20,
                    arity=min(config.arity_cap, 2),
                    ucap=3,
                    details=lambda: {"sign": H1_SIGN, "channels": list(H1_SIGN_CHANNELS)},
                ),
            ]
        )
    return checks
