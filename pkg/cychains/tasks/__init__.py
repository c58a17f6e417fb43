"""Collection of invoke tasks.

The `cychains` command line: run identity suites and evaluate expressions.
More information on `invoke` can be found at [pyinvoke.org](http://www.pyinvoke.org/).
"""

from __future__ import annotations

from .eval_expr import eval_expr
from .run_suite import run_suite

__all__ = ("eval_expr", "run_suite")
