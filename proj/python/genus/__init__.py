"""Genus and extended genus fields of abelian extensions of Q and F_q(T)."""

import json

from ._core import (
    SELFTEST_SUITES,
    BoundExceeded,
    GenusError,
    PrecisionError,
    SchemaError,
    report_json,
    report_text,
    run_cli,
    run_suite,
    suite_name,
)

__all__ = [
    "BoundExceeded",
    "GenusError",
    "PrecisionError",
    "SchemaError",
    "SELFTEST_SUITES",
    "report",
    "report_json",
    "report_text",
    "run_cli",
    "run_suite",
    "suite_name",
]


def report(command, spec_text, bound=None, level=None):
    """Report for a field descriptor as a dict.

    command is "number", "function" or "oracle"; spec_text is the descriptor
    document (the same format genusctl reads with --spec).
    """
    return json.loads(report_json(command, spec_text, bound, level))
