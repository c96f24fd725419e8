"""Bundled example instances (JSON), loaded through importlib.resources."""

from __future__ import annotations

import json
from importlib import resources

__all__ = ["names", "load", "cubical_groups"]


def names(kind: str | None = None) -> list[str]:
    out = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(".json"):
            name = entry.name[:-5]
            if kind is None or load(name).get("kind") == kind:
                out.append(name)
    return sorted(out)


def load(name: str) -> dict:
    path = resources.files(__name__) / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no bundled fixture named {name!r}")
    return json.loads(path.read_text())


def cubical_groups() -> dict:
    from ..homology.cubical import CubicalGroup

    return {name: CubicalGroup.from_json(load(name)) for name in names("cubical")}
