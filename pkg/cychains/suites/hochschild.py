"""Hochschild identities: the cochain dgla, the mixed complex of chains and its action."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cychains.cartan import de_rham
from cychains.core import sign
from cychains.hochschild import (
    MultiDiffOp,
    chain_boundary,
    cochain_action,
    cochain_differential,
    connes_B,
    gerstenhaber,
    hkr_chains,
)
from cychains.suites.report import Identity

if TYPE_CHECKING:  # pragma: no cover
    from cychains.hochschild import HochChain
    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler


def differential_square(phi: MultiDiffOp) -> bool:
    return cochain_differential(cochain_differential(phi)).is_zero()


def chain_boundary_square(c: HochChain) -> bool:
    return chain_boundary(chain_boundary(c)).is_zero()


def connes_square(c: HochChain) -> bool:
    return connes_B(connes_B(c)).is_zero()


def mixed_anticommutation(c: HochChain) -> bool:
    return (chain_boundary(connes_B(c)) + connes_B(chain_boundary(c))).is_zero()


def boundary_is_product_action(c: HochChain) -> bool:
    """`b_H = L_(m0)`."""
    return (chain_boundary(c) - cochain_action(MultiDiffOp.product(c.dim), c)).is_zero()


def connes_commutes_with_action(phi: MultiDiffOp, c: HochChain) -> bool:
    """`B L_D - (-1)^|D| L_D B = 0`."""
    left = connes_B(cochain_action(phi, c))
    right = cochain_action(phi, connes_B(c)) * sign(phi.degree)
    return (left - right).is_zero()


def action_bracket(phi: MultiDiffOp, psi: MultiDiffOp, c: HochChain) -> bool:
    """`L_[D1, D2] = L_D1 L_D2 - (-1)^(|D1||D2|) L_D2 L_D1`."""
    left = cochain_action(gerstenhaber(phi, psi), c)
    right = cochain_action(phi, cochain_action(psi, c)) - cochain_action(
        psi, cochain_action(phi, c)
    ) * sign(phi.degree * psi.degree)
    return (left - right).is_zero()


def action_differential(phi: MultiDiffOp, c: HochChain) -> bool:
    """`L_(b^H D) = b_H L_D - (-1)^|D| L_D b_H`."""
    left = cochain_action(cochain_differential(phi), c)
    right = chain_boundary(cochain_action(phi, c)) - cochain_action(
        phi, chain_boundary(c)
    ) * sign(phi.degree)
    return (left - right).is_zero()


def hkr_kills_boundary(c: HochChain) -> bool:
    return hkr_chains(chain_boundary(c)).is_zero()


def hkr_intertwines(c: HochChain) -> bool:
    """`hkr B = d hkr`."""
    return (hkr_chains(connes_B(c)) - de_rham(hkr_chains(c))).is_zero()


def identities(config: SuiteConfig) -> list[Identity]:
    top = max(config.arity_cap, 1)

    def _cochain(s: Sampler) -> MultiDiffOp:
        return s.cochain(s.integer(1, top))

    def _chain(s: Sampler) -> HochChain:
        return s.chain(s.integer(0, 3))

    return [
        Identity(
            "hochschild.cochains.differential_square",
            "cochain dgla",
            lambda s: (_cochain(s),),
            differential_square,
            arity=top,
        ),
        Identity(
            "hochschild.chains.boundary_square",
            "mixed complex",
            lambda s: (_chain(s),),
            chain_boundary_square,
            arity=1,
        ),
        Identity(
            "hochschild.chains.connes_square",
            "mixed complex",
            lambda s: (_chain(s),),
            connes_square,
            arity=1,
        ),
        Identity(
            "hochschild.chains.mixed",
            "mixed complex",
            lambda s: (_chain(s),),
            mixed_anticommutation,
            arity=1,
        ),
        Identity(
            "hochschild.action.product",
            "cochain action",
            lambda s: (_chain(s),),
            boundary_is_product_action,
            arity=1,
        ),
        Identity(
            "hochschild.action.connes",
            "cochain action",
            lambda s: (_cochain(s), _chain(s)),
            connes_commutes_with_action,
            arity=top,
        ),
        Identity(
            "hochschild.action.bracket",
            "cochain action",
            lambda s: (_cochain(s), _cochain(s), _chain(s)),
            action_bracket,
            arity=top,
        ),
        Identity(
            "hochschild.action.differential",
            "cochain action",
            lambda s: (_cochain(s), _chain(s)),
            action_differential,
            arity=top,
        ),
        Identity(
            "hochschild.hkr.boundary", "hkr", lambda s: (_chain(s),), hkr_kills_boundary, arity=1
        ),
        Identity(
            "hochschild.hkr.connes", "hkr", lambda s: (_chain(s),), hkr_intertwines, arity=1
        ),
    ]
