"""Opt-in invariant auditing.

Heavy audits (full properness scans, separability checks, chain invariants)
run only when enabled — via EDGECOLOR_DEBUG=1 in the environment, the CLI's
--debug-invariants flag, or enable() from tests.
"""

from __future__ import annotations

import os

__all__ = ["enabled", "enable", "disable"]

_active = os.environ.get("EDGECOLOR_DEBUG", "") == "1"


def enabled() -> bool:
    return _active


def enable() -> None:
    global _active
    _active = True


def disable() -> None:
    global _active
    _active = False
