"""Syntactic-distance constituency parsing toolkit (Python bindings)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, EMPTY_LABEL  # noqa: F401
