"""`eval_expr` task.

Evaluate a single operation on parsed arguments and print its canonical form.
"""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING

from invoke import task

from cychains.exceptions import CychainsException, InputError, UnableToResolve
from cychains.tasks.run_suite import usage_error
from cychains.utils import Emoji, error_msg, evaluate_expression

# Get logger
LOGGER = logging.getLogger(__name__)


@task(
    help={
        "expression": (
            "The expression, an operation name followed by its arguments, e.g. "
            "'div omega_std (d1)'. See the grammar in the documentation."
        ),
        "dim": "Dimension d of the algebraic torus. Default: 2.",
        "verbose": "Whether or not to print debug statements.",
    },
)
def eval_expr(_, expression, dim=2, verbose=False):
    """Parse an expression, apply the named operation and print the result."""
    if TYPE_CHECKING:  # pragma: no cover
        expression: str = expression  # type: ignore[no-redef]
        dim: int = dim  # type: ignore[no-redef]
        verbose: bool = verbose  # type: ignore[no-redef]

    if verbose:
        LOGGER.addHandler(logging.StreamHandler(sys.stdout))
        LOGGER.debug("Verbose logging enabled.")

    try:
        value = evaluate_expression(expression, int(dim))
    except (InputError, UnableToResolve) as exc:
        usage_error(str(exc))
        return
    except CychainsException as exc:
        sys.exit(f"{Emoji.CROSS_MARK.value} {error_msg(str(exc))}")

    print(value, flush=True)
