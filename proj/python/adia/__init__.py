"""Adiabatic error trade-off tools (C++ core)."""

from ._adia import *  # noqa: F401,F403
from ._adia import ConfigError, AdiaError

__all__ = [name for name in dir() if not name.startswith("_")]
