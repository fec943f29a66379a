"""Enumeration caps, overridable via the SPLICEKIT_ENUM_CAP env var."""

from __future__ import annotations

import os

DEFAULT_SOLUTION_LIMIT = 100_000
DEFAULT_GROUP_CAP = 1_000_000

_ENV_VAR = "SPLICEKIT_ENUM_CAP"


def _env_cap() -> int | None:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def solution_limit(override: int | None = None) -> int:
    """Per-edge cap on enumerated exponent solutions."""
    if override is not None:
        return override
    return _env_cap() or DEFAULT_SOLUTION_LIMIT


def group_cap(override: int | None = None) -> int:
    """Largest group order that element enumeration will attempt."""
    if override is not None:
        return override
    return _env_cap() or DEFAULT_GROUP_CAP
