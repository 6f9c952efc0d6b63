"""Named curve fixtures (label -> [a1, a2, a3, a4, a6])."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .curve_core import WeierstrassModel
from .errors import InputError


@lru_cache(maxsize=None)
def _bundled() -> dict:
    with resources.files("symcrit").joinpath("data/curves.json").open() as fh:
        return json.load(fh)


def load_table(path: str | Path | None = None) -> dict:
    if path is None:
        return dict(_bundled())
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object label -> coefficients")
    return data


def labels(path=None) -> list:
    return sorted(load_table(path))


def load_curve(label: str, path=None) -> WeierstrassModel:
    table = load_table(path)
    try:
        return WeierstrassModel.from_list(table[label])
    except KeyError:
        raise InputError(f"unknown fixture label {label!r}") from None


def parse_curve(text: str, path=None) -> WeierstrassModel:
    """A fixture label or a JSON array of 2 or 5 integers."""
    text = text.strip()
    if text.startswith("["):
        try:
            coeffs = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad curve array {text!r}: {exc}") from None
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
            raise InputError("curve coefficients must be integers")
        return WeierstrassModel.from_list(coeffs)
    return load_curve(text, path)
