"""Loader for the version-pinned system prompts shipped with the package."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load_prompt(name: str) -> str:
    ref = resources.files("planwright.data.prompts").joinpath(f"{name}.txt")
    return ref.read_text(encoding="utf-8").strip()
