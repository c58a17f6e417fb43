"""Console decorations for suite reports and task errors."""

from __future__ import annotations

import platform
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from typing_extensions import Self


class Emoji(str, Enum):
    """Unicode strings for the status markers."""

    def __new__(cls, value: str) -> Self:
        obj = str.__new__(cls, value)
        if platform.system() == "Windows":
            # No unicode emojis on Windows consoles
            obj._value_ = value.encode("unicode_escape").decode("utf-8")
        else:
            obj._value_ = value
        return obj

    PARTY_POPPER = "\U0001f389"
    CHECK_MARK = "✔"
    CROSS_MARK = "❌"
    SHIELD = "\U0001f6e1"


class Color(str, Enum):
    """ANSI escape sequences for colors."""

    RED = "\033[91m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    BLUE = "\033[94m"
    RESET = "\033[0m"

    def write(self, text: str) -> str:
        """Write the text with the color."""
        return f"{self.value}{text}{Color.RESET.value}"


BOLD = "\033[1m"
RESET = "\033[0m"


def bold(text: str) -> str:
    return f"{BOLD}{text}{RESET}"


def _labelled(color: Color, label: str, text: str) -> str:
    return f"{color.write(bold(label))}{color.write(' - ' + text)}"


def error_msg(text: str) -> str:
    """Write the text as an error message."""
    return _labelled(Color.RED, "ERROR", text)


def warning_msg(text: str) -> str:
    """Write the text as a warning message."""
    return _labelled(Color.YELLOW, "WARNING", text)


def info_msg(text: str) -> str:
    """Write the text as an info message."""
    return _labelled(Color.BLUE, "INFO", text)


def status_line(passed: bool, text: str, *, expected_failure: bool = False) -> str:
    """A report line prefixed by a pass/fail marker.

    Negative controls are expected to fail and get a shield marker when they do.
    """
    if expected_failure:
        if passed:
            return f"{Emoji.CROSS_MARK.value} {Color.RED.write(text)} (control did not fail)"
        return f"{Emoji.SHIELD.value} {Color.GREEN.write(text)} (control failed as planted)"
    if passed:
        return f"{Emoji.CHECK_MARK.value} {Color.GREEN.write(text)}"
    return f"{Emoji.CROSS_MARK.value} {Color.RED.write(text)}"
