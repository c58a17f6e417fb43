"""`run_suite` task.

Check the identities of one suite (or all of them) and print a report.
"""

from __future__ import annotations

import logging
import sys
import traceback
from typing import TYPE_CHECKING

from invoke import task

from cychains.exceptions import CychainsException, InputError
from cychains.suites import run_suite as run_identity_suite
from cychains.utils import Emoji, error_msg, load_config, parse_window

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any

# Get logger
LOGGER = logging.getLogger(__name__)

USAGE_ERROR = 2
"""Exit status for invalid options or configuration."""


def _as_int(name: str, value: Any) -> int | None:
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"--{name} must be an integer, got {value!r}") from exc


def usage_error(msg: str) -> None:
    """Print `msg` to stderr and exit with the usage-error status."""
    LOGGER.error(msg)
    print(f"{Emoji.CROSS_MARK.value} {error_msg(msg)}", file=sys.stderr, flush=True)
    sys.exit(USAGE_ERROR)


@task(
    help={
        "suite": (
            "Suite to run: cartan, hochschild, extended, koszul, uactions, linfty or "
            "all. Default: all."
        ),
        "dim": "Dimension d of the algebraic torus. Default: 2.",
        "u-cap": "Highest power of u kept in u-series. Default: 4.",
        "arity-cap": "Highest arity of L-infinity residuals. Default: 3.",
        "window": "Exponent window of random Laurent monomials, as 'lo..hi'. Default: -4..4.",
        "trials": "Random trials per identity. Default: 50.",
        "seed": "Seed of the per-trial random generators. Default: 42.",
        "format": "Report format, 'text' or 'json'. Default: text.",
        "with-controls": "Also run the negative controls, which must fail.",
        "workers": "Number of identities checked concurrently. Default: 1.",
        "timings": "Include the elapsed time per identity in the report.",
        "root-repo-path": (
            "A resolvable path to a directory whose 'pyproject.toml' may hold a "
            "[tool.cychains] table with defaults."
        ),
        "verbose": "Whether or not to print debug statements.",
    },
)
def run_suite(
    _,
    suite=None,
    dim=None,
    u_cap=None,
    arity_cap=None,
    window=None,
    trials=None,
    seed=None,
    format=None,
    with_controls=False,
    workers=None,
    timings=False,
    root_repo_path=".",
    verbose=False,
):
    """Check the identities of a suite and report the outcome.

    Exits with status 0 if every identity holds, 1 if one fails and 2 for invalid
    options.
    """
    if TYPE_CHECKING:  # pragma: no cover
        suite: str | None = suite  # type: ignore[no-redef]
        dim: str | None = dim  # type: ignore[no-redef]
        u_cap: str | None = u_cap  # type: ignore[no-redef]
        arity_cap: str | None = arity_cap  # type: ignore[no-redef]
        window: str | None = window  # type: ignore[no-redef]
        trials: str | None = trials  # type: ignore[no-redef]
        seed: str | None = seed  # type: ignore[no-redef]
        format: str | None = format  # type: ignore[no-redef]
        with_controls: bool = with_controls  # type: ignore[no-redef]
        workers: str | None = workers  # type: ignore[no-redef]
        timings: bool = timings  # type: ignore[no-redef]
        root_repo_path: str = root_repo_path  # type: ignore[no-redef]
        verbose: bool = verbose  # type: ignore[no-redef]

    if verbose:
        LOGGER.addHandler(logging.StreamHandler(sys.stdout))
        LOGGER.debug("Verbose logging enabled.")

    try:
        config = load_config(root_repo_path).with_overrides(
            suite=suite,
            dim=_as_int("dim", dim),
            ucap=_as_int("u-cap", u_cap),
            arity_cap=_as_int("arity-cap", arity_cap),
            window=parse_window(window) if window is not None else None,
            trials=_as_int("trials", trials),
            seed=_as_int("seed", seed),
            output_format=format,
            with_controls=with_controls or None,
            workers=_as_int("workers", workers),
            timings=timings or None,
        )
    except InputError as exc:
        usage_error(str(exc))
        return
    LOGGER.debug("Suite configuration: %r", config)

    try:
        report = run_identity_suite(config)
    except CychainsException as exc:
        LOGGER.debug("Traceback: %s", traceback.format_exc())
        usage_error(f"Could not assemble the suite {config.suite!r}. Exception: {exc}")
        return

    print(report.render(), flush=True)
    if not report.passed:
        sys.exit(report.exit_code)
