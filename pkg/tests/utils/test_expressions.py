"""Tests for utils/expressions.py"""

from __future__ import annotations

from fractions import Fraction

import pytest


@pytest.mark.parametrize(
    ("expression", "expected"),
    [
        ("div omega_std (d1)", "-1 * t^[-1,0]"),
        ("div ω_std (∂1)", "-1 * t^[-1,0]"),
        ("schouten (d1) (t1*d1)", "1 * (d1)"),
        ("wedge (d2) (d1)", "-1 * (d1^d2)"),
        ("iota (d1^d2) (dt1^dt2)", "-1"),
        ("lie (d1) (t1*dt2)", "1 * (dt2)"),
        ("d (t1^2*t2)", "2 * t^[1,1] * (dt1) + 1 * t^[2,0] * (dt2)"),
        ("integrate (t1^-1*t2^-1*dt1^dt2)", "1"),
        ("pair omega_std (d1^d2) (dt1^dt2)", "-1"),
        ("B (t1 (x) t2)", "1 (x) t1 (x) t2 - 1 (x) t2 (x) t1"),
        ("b (t1 (x) t2)", "0"),
        ("hkr (t1 (x) t2)", "1 * t^[1,0] * (dt2)"),
        ("div vol(1, [1,0]) (d1)", "0"),
    ],
    ids=[
        "div",
        "unicode",
        "schouten",
        "wedge",
        "iota",
        "lie",
        "de rham",
        "integrate",
        "pair",
        "connes B",
        "boundary",
        "hkr",
        "volume",
    ],
)
def test_evaluate_expression(expression: str, expected: str) -> None:
    """Evaluate the operations of the grammar on the 2-torus."""
    from cychains.utils.expressions import evaluate_expression

    assert str(evaluate_expression(expression)) == expected


def test_evaluate_expression_coefficients() -> None:
    """Rational coefficients and sums inside an argument."""
    from cychains.cartan import MultiVector
    from cychains.core import LaurentPoly
    from cychains.utils.expressions import evaluate_expression

    result = evaluate_expression("wedge (1/2*d1 - 3*t2*d1) (d2)")
    expected = LaurentPoly({(0, 0): Fraction(1, 2), (0, 1): -3}, 2)
    assert result == MultiVector({(1, 2): expected}, 2)


def test_tokenize() -> None:
    """Test tokenize()."""
    from cychains.utils.expressions import tokenize

    tokens = tokenize("B (t1 (x) t2^-1)")
    assert [token.kind for token in tokens] == [
        "name",
        "symbol",
        "name",
        "tensor",
        "name",
        "symbol",
        "symbol",
        "number",
        "symbol",
        "end",
    ]
    assert tokens[3].position == 6


@pytest.mark.parametrize(
    ("expression", "exception", "match"),
    [
        ("div omega_std (d1) $", "InputParserError", "Unexpected character '\\$'"),
        ("(d1)", "InputParserError", "starts with an operation name"),
        ("div omega_std (d3)", "InputParserError", "Variable index 3 outside 1..2"),
        ("div omega_std (d1", "InputParserError", "Expected '\\)', found 'end of input'"),
        ("div vol(1, [1]) (d1)", "InputParserError", "Volume exponent has 1 entries"),
        ("div sigma (d1)", "InputParserError", "Unknown volume form 'sigma'"),
        ("div omega_std (x1)", "InputParserError", "Unknown factor 'x1'"),
        ("curl (d1)", "UnableToResolve", "Unknown operation 'curl'"),
        ("div (d1)", "ArityMismatch", "div takes 2 argument"),
        ("div (d1) (d1)", "ArityMismatch", "must be a volume form"),
        ("iota (dt1) (dt1)", "ArityMismatch", "Expected a multivector, got form factors"),
        ("d (t1 (x) t2)", "ArityMismatch", "Expected a form, got a chain"),
        ("B (d1 (x) t2)", "ArityMismatch", "Chain slots must be monomials"),
    ],
    ids=[
        "bad character",
        "no operation",
        "index out of range",
        "unclosed",
        "volume exponent length",
        "unknown volume",
        "unknown factor",
        "unknown operation",
        "argument count",
        "volume expected",
        "multivector expected",
        "form expected",
        "chain expected",
    ],
)
def test_evaluate_expression_errors(expression: str, exception: str, match: str) -> None:
    """Parse errors, unknown names and argument kinds are reported."""
    from cychains import exceptions
    from cychains.utils.expressions import evaluate_expression

    with pytest.raises(getattr(exceptions, exception), match=match):
        evaluate_expression(expression)


def test_parse_error_position() -> None:
    """Parse errors keep the position of the offending token."""
    from cychains.exceptions import InputParserError
    from cychains.utils.expressions import evaluate_expression

    with pytest.raises(InputParserError) as exc_info:
        evaluate_expression("div omega_std (q1)")
    assert exc_info.value.position == 15
