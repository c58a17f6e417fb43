"""Utilities: configuration, console output, the expression language and sampling."""

from __future__ import annotations

from .config import SUITE_NAMES, SuiteConfig, config_from_mapping, load_config, parse_window
from .console_printing import Emoji, error_msg, info_msg, status_line, warning_msg
from .expressions import evaluate_expression
from .sampling import Sampler, identity_random, sampled, standard_volumes

__all__ = [
    "SUITE_NAMES",
    "Emoji",
    "Sampler",
    "SuiteConfig",
    "config_from_mapping",
    "error_msg",
    "evaluate_expression",
    "identity_random",
    "info_msg",
    "load_config",
    "parse_window",
    "sampled",
    "standard_volumes",
    "status_line",
    "warning_msg",
]
