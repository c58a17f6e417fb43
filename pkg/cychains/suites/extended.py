"""Identities of the extended complex and the Koszul rank table of the symbol complex."""

from __future__ import annotations

from typing import TYPE_CHECKING

from cychains.extended import (
    EElement,
    cyclic_sigma,
    cyclic_symmetrize,
    d0_rank,
    embed_cochain,
    extended_b,
    extended_nabla,
    extended_total_differential,
    koszul_line_cohomology,
    symbol_basis,
)
from cychains.hochschild import valued_coboundary
from cychains.suites.report import Identity

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any

    from cychains.core import USeries
    from cychains.hochschild import MultiDiffOp
    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler


def b_square(e: EElement) -> bool:
    return extended_b(extended_b(e)).is_zero()


def nabla_square(e: EElement) -> bool:
    return extended_nabla(extended_nabla(e)).is_zero()


def b_nabla_anticommute(e: EElement) -> bool:
    return (extended_b(extended_nabla(e)) + extended_nabla(extended_b(e))).is_zero()


def sigma_order(e: EElement) -> bool:
    """`sigma^(n+1) = id` on elements with `n + 1` slots."""
    counts = {n + 1 for _, n in e.bidegrees()} or {1}
    (count,) = counts
    result = e
    for _ in range(count):
        result = cyclic_sigma(result)
    return result == e


def sigma_nabla_commute(e: EElement) -> bool:
    return cyclic_sigma(extended_nabla(e)) == extended_nabla(cyclic_sigma(e))


def b_preserves_cyclic(e: EElement) -> bool:
    """`b` maps `sigma`-invariant elements to `sigma`-invariant elements."""
    image = extended_b(cyclic_symmetrize(e))
    return cyclic_sigma(image) == image


def total_square(s: USeries[EElement], with_nabla: bool) -> bool:
    once = extended_total_differential(s, with_nabla=with_nabla)
    return extended_total_differential(once, with_nabla=with_nabla).is_zero()


def embedding_chain_map(phi: MultiDiffOp) -> bool:
    """`embed` intertwines the valued coboundary with `b` and is injective."""
    embedded = embed_cochain(phi)
    if phi.is_zero() != embedded.is_zero():
        return False
    return embed_cochain(valued_coboundary(phi)) == extended_b(embedded)


def koszul_line(d: int, c: int) -> bool:
    """Cohomology of `d0` on the line `q - p = c` is one-dimensional at `(d, 0)` only."""
    return all(
        row.dim_cohomology == (1 if (row.p, row.q) == (d, 0) else 0)
        for row in koszul_line_cohomology(d, c)
    )


def koszul_spot_values() -> bool:
    """On the 2-torus the line `c = 0` has spaces of dimension `(1, 4, 3)`, ranks `(1, 3)`."""
    spaces = tuple(len(symbol_basis(2, p, p)) for p in range(3))
    ranks = tuple(d0_rank(2, p, p) for p in range(2))
    return spaces == (1, 4, 3) and ranks == (1, 3)


def identities(config: SuiteConfig) -> list[Identity]:
    def _element(s: Sampler) -> EElement:
        return s.eelement(s.rank(), s.integer(0, 3))

    def _series(s: Sampler) -> tuple[Any, ...]:
        n = s.integer(0, 2)
        rank = s.rank()
        return (s.u_series(lambda: s.eelement(rank, n), ucap=min(config.ucap, 2)),)

    return [
        Identity(
            "extended.b.square", "extended complex", lambda s: (_element(s),), b_square, arity=1
        ),
        Identity(
            "extended.nabla.square",
            "extended complex",
            lambda s: (_element(s),),
            nabla_square,
            arity=1,
        ),
        Identity(
            "extended.b_nabla.anticommute",
            "extended complex",
            lambda s: (_element(s),),
            b_nabla_anticommute,
            arity=1,
        ),
        Identity(
            "extended.sigma.order",
            "cyclic operator",
            lambda s: (_element(s),),
            sigma_order,
            arity=1,
        ),
        Identity(
            "extended.sigma.nabla",
            "cyclic operator",
            lambda s: (_element(s),),
            sigma_nabla_commute,
            arity=1,
        ),
        Identity(
            "extended.sigma.b_invariants",
            "cyclic operator",
            lambda s: (_element(s),),
            b_preserves_cyclic,
            arity=1,
        ),
        Identity(
            "extended.total.b_uB",
            "extended complex",
            _series,
            lambda s: total_square(s, with_nabla=False),
            trials=20,
            arity=1,
        ),
        Identity(
            "extended.total.b_nabla_uB",
            "extended complex",
            _series,
            lambda s: total_square(s, with_nabla=True),
            trials=20,
            arity=1,
        ),
        Identity(
            "extended.embed.chain_map",
            "extended complex",
            lambda s: (s.cochain(s.integer(0, 3), top_valued=True),),
            embedding_chain_map,
            arity=1,
        ),
    ]


def koszul_identities(config: SuiteConfig) -> list[Identity]:
    checks = []
    for d in sorted({1, 2, 3, config.dim}):
        for c in range(-d, 3):
            rows = [row.as_dict() for row in koszul_line_cohomology(d, c)]
            checks.append(
                Identity(
                    f"koszul.line.d{d}.c{c:+d}",
                    "symbol complex",
                    lambda s: (),
                    lambda d=d, c=c: koszul_line(d, c),
                    trials=1,
                    details=lambda rows=rows: {"rows": rows},
                    arity=0,
                )
            )
    checks.append(
        Identity(
            "koszul.spot.d2", "symbol complex", lambda s: (), koszul_spot_values, trials=1, arity=0
        )
    )
    return checks
