"""JSON schemas for the command-line inputs and outputs."""

import json
from importlib import resources

NAMES = ("config", "bases", "results", "manifest", "terms", "classify")


def load(name: str) -> dict:
    """Schema ``name`` (one of :data:`NAMES`) as a dict."""
    if name not in NAMES:
        raise ValueError(f"unknown schema {name!r}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())
