"""Defining-sequence construction and end analysis for Cantor sets in S^3
with prescribed local genus at a dense set of points."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
