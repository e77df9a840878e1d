"""Relative Lefschetz numbers, Reidemeister traces and Nielsen numbers of relative self-maps."""

import json as _json

from ._core import ReltraceError, commands, smith_normal_form, twisted_classes
from ._core import run_file as _run_file
from ._core import run_json as _run_json

__all__ = ["ReltraceError", "commands", "evaluate", "smith_normal_form", "twisted_classes"]


def evaluate(command, document, **options):
    """Run `command` on a path or an in-memory document; returns (exit_code, report dict)."""
    if isinstance(document, dict):
        code, text = _run_json(command, _json.dumps(document), format="json", **options)
    else:
        code, text = _run_file(command, str(document), format="json", **options)
    return code, _json.loads(text)
