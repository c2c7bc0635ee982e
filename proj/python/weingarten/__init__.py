"""Numerical workbench for linear Weingarten surfaces aH + bK = c."""

import json

from ._weingarten import WeingartenError, WeingartenParams, Surface, cyclic, parab, rot
from ._weingarten import run as _run

__all__ = ["WeingartenError", "WeingartenParams", "Surface", "cyclic", "parab", "rot", "run"]


def run(command, **config):
    """Run a CLI command in-process.

    Returns (exit_code, report) where report is the parsed JSON report.
    Keyword arguments are config fields, e.g. ``run("cyclic cone", output_dir="out")``.
    """
    code, report, _log = _run(json.dumps({"command": command, **config}))
    return code, json.loads(report)
