"""Cyclic chains. Exact checks of the cyclic and L-infinity structures on the algebraic torus."""

from __future__ import annotations

import logging

__version__ = "0.1.0"
__author__ = "The cychains developers"


logging.getLogger("cychains").setLevel(logging.DEBUG)
