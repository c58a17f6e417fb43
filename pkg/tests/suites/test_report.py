"""Tests for suites/report.py"""

from __future__ import annotations

import pytest


def three_terms():
    from cychains.core import LaurentPoly

    return LaurentPoly({(1, 0): 1, (0, 1): 2, (2, 2): -1}, 2)


def test_check_identity_passes() -> None:
    """Test check_identity() on an identity that always holds."""
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity("always", "test", lambda s: (s.integer(0, 9),), lambda n: n >= 0)
    result = check_identity(identity, SuiteConfig(trials=3))
    assert result.passed
    assert result.ok
    assert result.trials == 3
    assert result.ucap == 4
    assert result.counterexample is None


def test_check_identity_trial_cap() -> None:
    """`Identity.trials` caps the configured number of trials."""
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity("capped", "test", lambda s: (), lambda: True, trials=1, ucap=2)
    result = check_identity(identity, SuiteConfig(trials=5))
    assert (result.trials, result.ucap) == (1, 2)


def test_check_identity_shrinks_counterexample() -> None:
    """The reported counterexample is the smallest failing input found."""
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity("small", "test", lambda s: (s.integer(0, 100),), lambda n: n < 10)
    result = check_identity(identity, SuiteConfig(trials=50))
    assert not result.passed
    assert not result.ok
    assert result.counterexample == ["10"]


def test_check_identity_shrinks_laurent_polynomials() -> None:
    """A polynomial counterexample shrinks to the single monomial `1`."""
    from cychains.core import LaurentPoly
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity("nonzero", "test", lambda s: (s.laurent(),), lambda f: f.is_zero())
    result = check_identity(identity, SuiteConfig(trials=10, dim=2))
    assert not result.passed
    assert result.counterexample == [str(LaurentPoly.monomial((0, 0), 1))]


def test_check_identity_is_reproducible() -> None:
    """The same seed gives the same counterexample."""
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity(
        "pairs", "test", lambda s: (s.integer(0, 9), s.integer(0, 9)), lambda a, b: a <= b
    )
    first = check_identity(identity, SuiteConfig(trials=20, seed=5))
    second = check_identity(identity, SuiteConfig(trials=20, seed=5))
    assert first.counterexample == second.counterexample == ["1", "0"]


def test_check_identity_exception() -> None:
    """An exception in the predicate fails the identity and is recorded."""
    from cychains.suites import Identity, check_identity
    from cychains.utils.config import SuiteConfig

    identity = Identity("raises", "test", lambda s: (0,), lambda n: 1 / n == 1)
    result = check_identity(identity, SuiteConfig(trials=2))
    assert not result.passed
    assert result.counterexample[0] == "0"
    assert result.counterexample[-1].startswith("raised ZeroDivisionError")


def test_controls_are_expected_to_fail() -> None:
    """A failing control keeps the run green; a passing one does not."""
    from cychains.suites import Identity, run_identities
    from cychains.utils.config import SuiteConfig

    config = SuiteConfig(trials=2)
    planted = Identity("planted", "control", lambda s: (), lambda: False, control=True)
    report = run_identities([planted], config)
    assert report.passed
    assert report.exit_code == 0
    assert report.results[0].counterexample == []

    missed = Identity("missed", "control", lambda s: (), lambda: True, control=True)
    report = run_identities([planted, missed], config)
    assert not report.passed
    assert report.exit_code == 1
    assert [result.identity for result in report.failures()] == ["missed"]


def test_run_identities_duplicate_ids() -> None:
    from cychains.exceptions import InputError
    from cychains.suites import Identity, run_identities
    from cychains.utils.config import SuiteConfig

    identity = Identity("twice", "test", lambda s: (), lambda: True)
    with pytest.raises(InputError, match="Duplicate identity id 'twice'"):
        run_identities([identity, identity], SuiteConfig())


def test_run_identities_workers() -> None:
    """Concurrent runs give the same results, ordered by id."""
    from cychains.suites import Identity, run_identities
    from cychains.utils.config import SuiteConfig

    identities = [
        Identity(name, "test", lambda s: (s.integer(0, 99),), lambda x: x < 90)
        for name in ("c", "a", "b")
    ]
    serial = run_identities(identities, SuiteConfig(trials=20))
    concurrent = run_identities(identities, SuiteConfig(trials=20, workers=3))
    assert [result.identity for result in serial.results] == ["a", "b", "c"]
    assert [
        (result.identity, result.passed, result.counterexample) for result in serial.results
    ] == [
        (result.identity, result.passed, result.counterexample)
        for result in concurrent.results
    ]


def test_report_json() -> None:
    """Test the JSON report layout."""
    import json

    from cychains.suites import REPORT_SCHEMA, Identity, run_identities
    from cychains.utils.config import SuiteConfig

    identities = [
        Identity("ok", "test", lambda s: (), lambda: True, arity=2, details=lambda: {"n": 1}),
        Identity("control", "control", lambda s: (), lambda: False, control=True),
    ]
    config = SuiteConfig(trials=1, output_format="json", timings=True)
    data = json.loads(run_identities(identities, config).render())

    assert data["schema"] == REPORT_SCHEMA == "cychains-report/1"
    assert data["pass"] is True
    assert data["config"]["window"] == "-4..4"
    control, ok = data["results"]
    assert control["control"] is True
    assert control["pass"] is False
    assert ok["details"] == {"n": 1}
    assert (ok["arity"], ok["u_order"], ok["counterexample"]) == (2, 4, None)
    assert "elapsed" in ok


def test_report_text() -> None:
    """Test the text report summary lines."""
    from cychains.suites import Identity, run_identities
    from cychains.utils.config import SuiteConfig
    from cychains.utils.console_printing import Emoji

    config = SuiteConfig(trials=1)
    report = run_identities([Identity("ok", "test", lambda s: (), lambda: True)], config)
    text = report.render()
    assert text.splitlines()[-1] == f"{Emoji.PARTY_POPPER.value} All 1 identities hold."
    assert "ok [test] 1 trial(s)" in text

    failing = Identity("bad", "test", lambda s: (three_terms(),), lambda f: f.is_zero())
    text = run_identities([failing], config).to_text()
    assert text.splitlines()[-1] == f"{Emoji.CROSS_MARK.value} 1 of 1 failed."
    assert "    counterexample:" in text
