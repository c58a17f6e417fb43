"""Identity records, the trial runner and report rendering."""

from __future__ import annotations

import json
import logging
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from hypothesis import Phase, Verbosity, find, settings
from hypothesis.errors import NoSuchExample

from cychains.exceptions import InputError
from cychains.utils.console_printing import Emoji, bold, status_line
from cychains.utils.sampling import identity_random, sampled

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any, Callable, Sequence

    from cychains.utils.config import SuiteConfig
    from cychains.utils.sampling import Sampler

LOGGER = logging.getLogger(__name__)

REPORT_SCHEMA = "cychains-report/1"


@dataclass(frozen=True)
class Identity:
    """A checkable identity: how to draw inputs and the predicate that must hold.

    `holds` is called with the drawn inputs. `trials` caps the configured number of
    trials for expensive identities; `control` marks planted defects that must fail.
    """

    identity: str
    tag: str
    sample: Callable[[Sampler], tuple[Any, ...]]
    holds: Callable[..., bool]
    trials: int | None = None
    arity: int | None = None
    ucap: int | None = None
    control: bool = False
    details: Callable[[], dict[str, Any]] | None = None


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of all trials of one identity."""

    identity: str
    tag: str
    passed: bool
    trials: int
    arity: int | None = None
    ucap: int | None = None
    counterexample: list[str] | None = None
    control: bool = False
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Whether the outcome is the expected one: pass, or fail for a control."""
        return self.passed != self.control

    def as_dict(self, timings: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.identity,
            "tag": self.tag,
            "pass": self.passed,
            "trials": self.trials,
            "arity": self.arity,
            "u_order": self.ucap,
            "counterexample": self.counterexample,
        }
        if self.control:
            data["control"] = True
        if self.details:
            data["details"] = self.details
        if timings:
            data["elapsed"] = round(self.elapsed, 3)
        return data


@dataclass
class SuiteReport:
    """All results of a run, ordered by identity id."""

    config: SuiteConfig
    results: list[IdentityResult]

    @property
    def passed(self) -> bool:
        return all(result.ok for result in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def failures(self) -> list[IdentityResult]:
        return [result for result in self.results if not result.ok]

    def as_dict(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "config": self.config.as_dict(),
            "pass": self.passed,
            "results": [result.as_dict(self.config.timings) for result in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [bold(f"cychains report ({self.config.suite}, seed {self.config.seed})")]
        for result in self.results:
            text = f"{result.identity} [{result.tag}] {result.trials} trial(s)"
            if self.config.timings:
                text += f" in {result.elapsed:.2f}s"
            lines.append(status_line(result.passed, text, expected_failure=result.control))
            for key, value in result.details.items():
                lines.append(f"    {key}: {value}")
            if result.counterexample and not result.control:
                lines.append("    counterexample:")
                lines.extend(f"      {_}" for _ in result.counterexample)
        failed = len(self.failures())
        if failed:
            lines.append(f"{Emoji.CROSS_MARK.value} {failed} of {len(self.results)} failed.")
        else:
            lines.append(f"{Emoji.PARTY_POPPER.value} All {len(self.results)} identities hold.")
        return "\n".join(lines)

    def render(self) -> str:
        return self.to_json() if self.config.output_format == "json" else self.to_text()


def _describe(arguments: Sequence[Any]) -> list[str]:
    return [str(argument) for argument in arguments]


def check_identity(identity: Identity, config: SuiteConfig) -> IdentityResult:
    """Search for a counterexample to `identity`; hypothesis shrinks the one it finds.

    The search tries at most `trials` inputs and is seeded from the run seed and the
    identity id, so reports are reproducible.
    """
    trials = config.trials if identity.trials is None else min(config.trials, identity.trials)
    ucap = identity.ucap if identity.ucap is not None else config.ucap

    def fails(arguments: tuple[Any, ...]) -> bool:
        try:
            return not identity.holds(*arguments)
        except Exception:  # noqa: BLE001
            LOGGER.debug("Traceback: %s", traceback.format_exc())
            return True

    start = time.perf_counter()
    counterexample = None
    try:
        arguments = find(
            sampled(identity.sample, config.dim, config.window, ucap),
            fails,
            settings=settings(
                max_examples=trials,
                database=None,
                deadline=None,
                derandomize=False,
                phases=(Phase.generate, Phase.shrink),
                verbosity=Verbosity.quiet,
            ),
            random=identity_random(config.seed, identity.identity),
        )
    except NoSuchExample:
        pass
    else:
        counterexample = _describe(arguments)
        try:
            identity.holds(*arguments)
        except Exception as exc:  # noqa: BLE001
            counterexample.append(f"raised {type(exc).__name__}: {exc}")
        LOGGER.info("%s failed", identity.identity)
    details = identity.details() if identity.details is not None else {}
    return IdentityResult(
        identity=identity.identity,
        tag=identity.tag,
        passed=counterexample is None,
        trials=trials,
        arity=identity.arity,
        ucap=ucap,
        counterexample=counterexample,
        control=identity.control,
        elapsed=time.perf_counter() - start,
        details=details,
    )


def run_identities(identities: Sequence[Identity], config: SuiteConfig) -> SuiteReport:
    """Check identities, concurrently when `config.workers > 1`, merged by id."""
    seen = set()
    for identity in identities:
        if identity.identity in seen:
            raise InputError(f"Duplicate identity id {identity.identity!r}")
        seen.add(identity.identity)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(lambda i: check_identity(i, config), identities))
    else:
        results = [check_identity(identity, config) for identity in identities]
    return SuiteReport(config, sorted(results, key=lambda result: result.identity))
