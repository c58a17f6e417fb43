"""Suite configuration: defaults, `[tool.cychains]` in `pyproject.toml` and CLI overrides."""

from __future__ import annotations

import logging
import re
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import TYPE_CHECKING

import tomlkit
from tomlkit.exceptions import TOMLKitError

from cychains.exceptions import InputError, InputParserError

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any, Mapping

LOGGER = logging.getLogger(__name__)

SUITE_NAMES = ("cartan", "hochschild", "extended", "koszul", "uactions", "linfty", "all")
"""Suites that may be requested by name."""

OUTPUT_FORMATS = ("text", "json")

WINDOW_PATTERN = re.compile(r"^\s*(?P<lo>-?\d+)\s*\.\.\s*(?P<hi>-?\d+)\s*$")


def parse_window(value: str) -> tuple[int, int]:
    """Parse an exponent window `lo..hi`, e.g. `-4..4`."""
    match = WINDOW_PATTERN.match(value)
    if match is None:
        raise InputParserError(f"Window must be given as 'lo..hi', got {value!r}")
    lo, hi = int(match.group("lo")), int(match.group("hi"))
    if lo > hi:
        raise InputError(f"Empty window {value!r}: lower bound exceeds upper bound")
    return lo, hi


@dataclass(frozen=True)
class SuiteConfig:
    """Everything a suite run depends on. Reports are reproducible from it."""

    suite: str = "all"
    dim: int = 2
    ucap: int = 4
    arity_cap: int = 3
    window: tuple[int, int] = (-4, 4)
    trials: int = 50
    seed: int = 42
    output_format: str = "text"
    with_controls: bool = False
    workers: int = 1
    timings: bool = False

    def __post_init__(self) -> None:
        if self.suite not in SUITE_NAMES:
            raise InputError(
                f"Unknown suite {self.suite!r}. Choose one of: {', '.join(SUITE_NAMES)}"
            )
        if self.dim < 1:
            raise InputError(f"The torus dimension must be at least 1, got {self.dim}")
        if self.ucap < 0 or self.arity_cap < 0:
            raise InputError("The u-cap and the arity cap must be non-negative")
        if self.trials < 1:
            raise InputError(f"At least one trial is needed, got {self.trials}")
        if self.workers < 1:
            raise InputError(f"At least one worker is needed, got {self.workers}")
        if self.output_format not in OUTPUT_FORMATS:
            raise InputError(
                f"Unknown format {self.output_format!r}. Choose one of: "
                f"{', '.join(OUTPUT_FORMATS)}"
            )
        lo, hi = self.window
        if lo > hi:
            raise InputError(f"Empty window {lo}..{hi}")

    def with_overrides(self, **overrides: Any) -> SuiteConfig:
        """A copy with the given non-`None` fields replaced."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self) -> dict[str, Any]:
        """The reproducibility-relevant fields, as written to reports."""
        data = asdict(self)
        for name in ("output_format", "workers", "timings"):
            data.pop(name)
        data["window"] = f"{self.window[0]}..{self.window[1]}"
        return data


def config_from_mapping(data: Mapping[str, Any]) -> SuiteConfig:
    """Build a `SuiteConfig` from a `[tool.cychains]`-style table.

    Keys use dashes, as in `u-cap`, `arity-cap` and `with-controls`.
    """
    known = {field.name for field in fields(SuiteConfig)}
    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        name = {"format": "output_format", "u-cap": "ucap"}.get(key, key.replace("-", "_"))
        if name not in known:
            raise InputError(f"Unknown configuration key {key!r} in [tool.cychains]")
        if name == "window":
            value = parse_window(str(value))
        elif not isinstance(value, (bool, str)):
            value = int(value)
        kwargs[name] = value
    return SuiteConfig(**kwargs)


def load_config(root: str | Path = ".") -> SuiteConfig:
    """Read `[tool.cychains]` from `pyproject.toml` under `root`, if present."""
    pyproject_path = Path(root).resolve() / "pyproject.toml"
    if not pyproject_path.exists():
        LOGGER.debug("No pyproject.toml at %s, using defaults", pyproject_path)
        return SuiteConfig()
    try:
        pyproject = tomlkit.parse(pyproject_path.read_bytes())
    except TOMLKitError as exc:
        raise InputParserError(
            f"Could not parse the 'pyproject.toml' file at: {pyproject_path}\n"
            f"Exception: {exc}"
        ) from exc
    table = pyproject.get("tool", {}).get("cychains", {})
    LOGGER.debug("Configuration from %s: %s", pyproject_path, dict(table))
    return config_from_mapping(table.unwrap() if hasattr(table, "unwrap") else table)
