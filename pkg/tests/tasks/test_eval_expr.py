"""Test `cychains.tasks.eval_expr()`."""

from __future__ import annotations

import pytest


@pytest.mark.parametrize(
    ("expression", "dim", "expected"),
    [
        ("div omega_std (d1)", 2, "-1 * t^[-1,0]"),
        ("div omega_std (d3)", "3", "-1 * t^[0,0,-1]"),
        ("B (t1 (x) t2)", 2, "1 (x) t1 (x) t2 - 1 (x) t2 (x) t1"),
    ],
    ids=["div", "dim from the command line", "connes B"],
)
def test_eval_expr(capsys: pytest.CaptureFixture, expression: str, dim, expected: str) -> None:
    """Test eval_expr prints the canonical form of the result."""
    from invoke import MockContext

    from cychains.tasks.eval_expr import eval_expr

    eval_expr(MockContext(), expression, dim=dim)

    assert capsys.readouterr().out == f"{expected}\n"


@pytest.mark.parametrize(
    ("expression", "message"),
    [
        ("curl (d1)", "Unknown operation 'curl'"),
        ("div omega_std (d1", "Expected ')'"),
        ("iota (dt1) (dt1)", "Expected a multivector"),
    ],
    ids=["unknown operation", "parse error", "argument kind"],
)
def test_eval_expr_usage_errors(
    capsys: pytest.CaptureFixture, expression: str, message: str
) -> None:
    """Unparsable or ill-typed expressions exit with status 2."""
    from invoke import MockContext

    from cychains.tasks.eval_expr import eval_expr

    with pytest.raises(SystemExit) as exc_info:
        eval_expr(MockContext(), expression)
    assert exc_info.value.code == 2
    assert message in capsys.readouterr().err


def test_eval_expr_computation_error(monkeypatch: pytest.MonkeyPatch) -> None:
    """Errors raised while computing stop with a message."""
    from importlib import import_module

    from invoke import MockContext

    from cychains.exceptions import DivisionByUError

    eval_expr_module = import_module("cychains.tasks.eval_expr")

    def divide(expression, dim):
        raise DivisionByUError("Constant term of the u-series is not zero")

    monkeypatch.setattr(eval_expr_module, "evaluate_expression", divide)

    with pytest.raises(SystemExit, match="Constant term of the u-series is not zero"):
        eval_expr_module.eval_expr(MockContext(), "d (t1)")
