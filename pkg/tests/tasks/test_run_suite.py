"""Test `cychains.tasks.run_suite()`."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

if TYPE_CHECKING:
    from pathlib import Path


def test_run_suite(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """Test run_suite exits cleanly when every identity holds."""
    from invoke import MockContext

    from cychains.tasks.run_suite import run_suite
    from cychains.utils.console_printing import Emoji

    run_suite(MockContext(), suite="koszul", root_repo_path=str(tmp_path))

    captured = capsys.readouterr()
    assert captured.out.splitlines()[-1] == f"{Emoji.PARTY_POPPER.value} All 16 identities hold."
    assert captured.err == ""


def test_run_suite_json(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """Command line options are passed on to the report as strings."""
    import json

    from invoke import MockContext

    from cychains.tasks.run_suite import run_suite

    run_suite(
        MockContext(),
        suite="cartan",
        trials="2",
        seed="7",
        window="-2..2",
        format="json",
        root_repo_path=str(tmp_path),
    )

    report = json.loads(capsys.readouterr().out)
    assert report["pass"] is True
    assert report["config"]["trials"] == 2
    assert report["config"]["seed"] == 7
    assert report["config"]["window"] == "-2..2"
    assert all(result["trials"] == 2 for result in report["results"])


def test_run_suite_pyproject_defaults(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """`[tool.cychains]` supplies defaults that options override."""
    import json

    from invoke import MockContext

    from cychains.tasks.run_suite import run_suite

    (tmp_path / "pyproject.toml").write_text(
        '[tool.cychains]\nsuite = "koszul"\nformat = "json"\nseed = 3\n', encoding="utf8"
    )

    run_suite(MockContext(), seed="5", root_repo_path=str(tmp_path))

    config = json.loads(capsys.readouterr().out)["config"]
    assert (config["suite"], config["seed"]) == ("koszul", 5)


def test_run_suite_failure(
    tmp_path: Path, capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch
) -> None:
    """A failing identity gives exit status 1 and a counterexample."""
    from invoke import MockContext

    from cychains.suites import SUITES, Identity
    from cychains.tasks.run_suite import run_suite

    monkeypatch.setitem(
        SUITES,
        "koszul",
        lambda config: [Identity("koszul.broken", "test", lambda s: (1,), lambda n: n == 0)],
    )

    with pytest.raises(SystemExit) as exc_info:
        run_suite(MockContext(), suite="koszul", root_repo_path=str(tmp_path))
    assert exc_info.value.code == 1

    out = capsys.readouterr().out
    assert "koszul.broken" in out
    assert "1 of 1 failed." in out


@pytest.mark.parametrize(
    ("options", "message"),
    [
        ({"suite": "nope"}, "Unknown suite 'nope'"),
        ({"window": "3..1"}, "Empty window"),
        ({"window": "3"}, "lo..hi"),
        ({"trials": "many"}, "--trials must be an integer, got 'many'"),
        ({"workers": "0"}, "At least one worker"),
        ({"format": "yaml"}, "Unknown format"),
    ],
    ids=["suite", "empty window", "malformed window", "trials", "workers", "format"],
)
def test_run_suite_usage_errors(
    tmp_path: Path, capsys: pytest.CaptureFixture, options: dict, message: str
) -> None:
    """Invalid options exit with status 2 before any identity is checked."""
    from invoke import MockContext

    from cychains.tasks.run_suite import USAGE_ERROR, run_suite

    with pytest.raises(SystemExit) as exc_info:
        run_suite(MockContext(), root_repo_path=str(tmp_path), **options)
    assert exc_info.value.code == USAGE_ERROR == 2

    captured = capsys.readouterr()
    assert captured.out == ""
    assert message in captured.err


def test_run_suite_assembly_error(
    tmp_path: Path, capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Errors while collecting identities are usage errors."""
    from invoke import MockContext

    from cychains.exceptions import WindowTooSmall
    from cychains.suites import SUITES
    from cychains.tasks.run_suite import run_suite

    def broken(config):
        raise WindowTooSmall("No basis in the window")

    monkeypatch.setitem(SUITES, "linfty", broken)

    with pytest.raises(SystemExit) as exc_info:
        run_suite(MockContext(), suite="linfty", root_repo_path=str(tmp_path))
    assert exc_info.value.code == 2
    assert "Could not assemble the suite 'linfty'" in capsys.readouterr().err


def test_run_suite_verbose(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    """Test run_suite logs its configuration when verbose."""
    from invoke import MockContext

    from cychains.tasks.run_suite import run_suite

    caplog.set_level("DEBUG", logger="cychains.tasks.run_suite")
    run_suite(MockContext(), suite="koszul", verbose=True, root_repo_path=str(tmp_path))

    assert "Verbose logging enabled." in caplog.text
    assert "Suite configuration:" in caplog.text
