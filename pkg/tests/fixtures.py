"""Shared access to the fixture documents under fixtures/."""

from functools import lru_cache
from pathlib import Path

from src.dsl.parser import ComplexDocument, load_document

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@lru_cache(maxsize=None)
def fixture(name: str) -> ComplexDocument:
    return load_document(FIXTURE_DIR / f"{name}.tdc")


def fixture_path(name: str) -> str:
    return str(FIXTURE_DIR / f"{name}.tdc")
