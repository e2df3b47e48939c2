"""Supercoherent states of the free particle: verification suites and evaluators."""

import json

from ._native import (
    SUITES,
    closed_form_symbol,
    profile,
    series_modes,
    super_norm,
    symbol,
    trajectory,
)
from ._native import verify as _verify

__all__ = [
    "SUITES",
    "closed_form_symbol",
    "profile",
    "series_modes",
    "super_norm",
    "symbol",
    "trajectory",
    "verify",
]


def verify(suite="all", **options):
    """Run a suite; returns ``(passed, report)`` with the report as a dict."""
    passed, text = _verify(suite, **options)
    return passed, json.loads(text)
