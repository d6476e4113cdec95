"""Enumeration budgets.

Searches refuse (never silently truncate) when the state count would exceed
the budget.  Default is 2^16 states, overridable via CURVLAB_MAX_ENUM.
"""

from __future__ import annotations

import os

DEFAULT_MAX_ENUM = 2**16


def default_budget() -> int:
    env = os.environ.get("CURVLAB_MAX_ENUM")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CURVLAB_MAX_ENUM must be a decimal integer, got {env!r}")
    return DEFAULT_MAX_ENUM
