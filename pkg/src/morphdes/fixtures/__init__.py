"""Bundled example models."""

from importlib import resources
from pathlib import Path

from ..model import SystemModel


def fixture_path(name: str = "smart_home") -> Path:
    """Filesystem path of a bundled ``.morph`` fixture."""
    with resources.as_file(resources.files(__name__) / f"{name}.morph") as path:
        return Path(path)


def load(name: str = "smart_home") -> SystemModel:
    """Parse and return a bundled fixture model."""
    from ..modelfile import parse

    text = (resources.files(__name__) / f"{name}.morph").read_text(encoding="utf-8")
    return parse(text)


def load_smart_home(full: bool = False) -> SystemModel:
    """The smart-home management system example.

    ``full=True`` selects the variant that keeps all three audio-system
    options (larger raw design space, identical frontiers).
    """
    return load("smart_home_full" if full else "smart_home")
