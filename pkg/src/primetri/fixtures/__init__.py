"""Printed exception lists, one integer per line."""
from __future__ import annotations

import os
from pathlib import Path
from typing import List, Union

ENV_VAR = "PRIMETRI_FIXTURE_DIR"


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).parent


def resolve(name: Union[str, Path]) -> Path:
    """A path as given if it exists, else ``name`` (with or without .txt) in the fixture dir."""
    p = Path(name)
    if p.is_file():
        return p
    base = fixture_dir()
    for cand in (base / p.name, base / f"{p.name}.txt"):
        if cand.is_file():
            return cand
    raise FileNotFoundError(f"no fixture {name!r} (looked in {base})")


def parse(text: str) -> List[int]:
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        return []
    return [int(line) for line in text.split("\n")]


def load(name: Union[str, Path]) -> List[int]:
    return parse(resolve(name).read_text(encoding="ascii"))


def dump(values: List[int]) -> str:
    return "".join(f"{v}\n" for v in values)


def available() -> List[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.txt"))
