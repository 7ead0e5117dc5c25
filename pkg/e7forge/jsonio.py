"""JSON IO helpers shared across the toolkit and CLI."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .config import REPO_ROOT


def dumps_canonical(payload: Any, *, compact: bool = False) -> str:
    if compact:
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return json.dumps(payload, sort_keys=True, indent=2)


def save_json(payload: Any, path: Path, *, compact: bool = False) -> Path:
    path.parent.mkdir(exist_ok=True, parents=True)
    with path.open("w", encoding="utf-8") as handle:
        handle.write(dumps_canonical(payload, compact=compact))
        handle.write("\n")

    return path


def load_json(path: Path) -> Any:
    with path.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def display_relative(path: Path) -> str:
    try:
        return path.resolve().relative_to(REPO_ROOT).as_posix()
    except ValueError:
        return path.as_posix()
