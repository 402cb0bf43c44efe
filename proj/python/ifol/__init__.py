"""Intensional first-order logic with autoepistemic memory."""

from pathlib import Path

from . import _core
from ._core import (
    ConstructionError,
    IfolError,
    MissingExtension,
    MissingTemplate,
    NotParseable,
    ParseError,
    SignatureError,
    canonical,
    free_vars,
)

__all__ = [
    "ConstructionError",
    "IfolError",
    "MissingExtension",
    "MissingTemplate",
    "NotParseable",
    "ParseError",
    "Session",
    "SignatureError",
    "bundled_data_dir",
    "canonical",
    "free_vars",
    "run_demo",
]


def bundled_data_dir() -> str:
    # Installed wheels carry the data next to the package; builds from a
    # source tree fall back to the directory compiled into the module.
    here = Path(__file__).with_name("data")
    return str(here) if here.is_dir() else _core.default_data_dir()


class Session(_core.Session):
    def __init__(self, data_dir=None, corpus=None, budget=3):
        super().__init__(data_dir=data_dir or bundled_data_dir(), corpus=corpus, budget=budget)


def run_demo(data_dir=None, corpus=None, budget=3, tau=1700000000):
    """Run the video retrieval example; returns a dict with ok, lines,
    checks, found_clips, rendered, answers and trace."""
    return _core.run_demo(data_dir=data_dir or bundled_data_dir(), corpus=corpus, budget=budget, tau=tau)
