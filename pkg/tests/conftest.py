"""Test fixtures."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from hypothesis import HealthCheck, settings

if TYPE_CHECKING:
    from typing import Callable

    from hypothesis.strategies import DataObject

    from cychains.cartan import VolumeForm
    from cychains.utils.sampling import Sampler


settings.register_profile(
    "cychains",
    max_examples=10,
    deadline=None,
    derandomize=True,
    database=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cychains")


@pytest.fixture(autouse=True)
def _clear_loggers() -> None:
    """Remove handlers from all loggers"""
    import logging

    loggers = [
        logging.getLogger(),
        *(
            _
            for _ in logging.Logger.manager.loggerDict.values()
            if isinstance(_, logging.Logger)
        ),
    ]
    for logger in loggers:
        handlers = getattr(logger, "handlers", [])
        for handler in handlers:
            logger.removeHandler(handler)


@pytest.fixture(scope="session")
def sampler() -> Callable[..., Sampler]:
    """Factory for samplers drawing from `st.data()`: `sampler(data, dim=2, ucap=2)`."""
    from cychains.utils.sampling import Sampler

    def _sampler(
        data: DataObject, dim: int = 2, ucap: int = 2, window: tuple[int, int] = (-2, 2)
    ) -> Sampler:
        return Sampler(data.draw, dim, window, ucap)

    return _sampler


def _volume_ids() -> list[str]:
    return ["rho0", "rho1", "rho2"]


@pytest.fixture(scope="session", params=range(3), ids=_volume_ids())
def volume(request: pytest.FixtureRequest) -> VolumeForm:
    """Each test density on the 2-torus."""
    from cychains.utils.sampling import standard_volumes

    return standard_volumes(2)[request.param]
