"""Python front end for the hclab experiment runner."""

import json

from ._hclab import (
    SCHEMA_VERSION,
    DimensionError,
    DomainError,
    InputError,
    NumericError,
    PreconditionError,
    commands,
    det_mnk,
    emit_goldens,
    exp_nilpotent,
    ker_dagger,
    kernel_and_image,
)
from ._hclab import render as _render

__all__ = [
    "SCHEMA_VERSION",
    "DimensionError",
    "DomainError",
    "InputError",
    "NumericError",
    "PreconditionError",
    "commands",
    "det_mnk",
    "emit_goldens",
    "exp_nilpotent",
    "ker_dagger",
    "kernel_and_image",
    "render",
    "run",
]


def render(command, params=None, format="json", threads=1):
    """Serialized report text and exit code, exactly as the CLI would produce them."""
    return _render(command, json.dumps(params or {}), format, threads)


def run(command, params=None, threads=1):
    """Runs a subcommand and returns (envelope dict, exit code)."""
    text, code = render(command, params, "json", threads)
    return json.loads(text), code
