"""Identity suites, one per area of the library, and the suite runner."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from cychains.suites import cartan, controls, extended, hochschild, linfty, uactions
from cychains.suites.report import (
    REPORT_SCHEMA,
    Identity,
    IdentityResult,
    SuiteReport,
    check_identity,
    run_identities,
)

if TYPE_CHECKING:  # pragma: no cover
    from typing import Callable

    from cychains.utils.config import SuiteConfig

__all__ = (
    "REPORT_SCHEMA",
    "SUITES",
    "Identity",
    "IdentityResult",
    "SuiteReport",
    "check_identity",
    "collect_identities",
    "run_identities",
    "run_suite",
)

LOGGER = logging.getLogger(__name__)

SUITES: dict[str, Callable[[SuiteConfig], list[Identity]]] = {
    "cartan": cartan.identities,
    "hochschild": hochschild.identities,
    "extended": extended.identities,
    "koszul": extended.koszul_identities,
    "uactions": uactions.identities,
    "linfty": linfty.identities,
}
"""Identity collections by suite name. `all` runs every one of them."""


def collect_identities(config: SuiteConfig) -> list[Identity]:
    """The identities of the configured suite, plus the negative controls if requested."""
    names = list(SUITES) if config.suite == "all" else [config.suite]
    collected = []
    for name in names:
        collected.extend(SUITES[name](config))
    if config.with_controls:
        collected.extend(controls.identities(config))
    LOGGER.debug("Collected %d identities for suite %r", len(collected), config.suite)
    return collected


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Check every identity of the configured suite."""
    return run_identities(collect_identities(config), config)
