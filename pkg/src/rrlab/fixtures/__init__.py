"""Golden reference data shipped with the package."""

from __future__ import annotations

import json
from functools import cache
from importlib import resources


@cache
def reference() -> dict:
    return json.loads(resources.files(__package__).joinpath("reference.json").read_text())


def polynomial(name: str):
    from ..cm.minpoly import IntPoly
    return IntPoly.parse(reference()["polynomials"][name])


def value(name: str) -> str:
    return reference()["values"][name]
