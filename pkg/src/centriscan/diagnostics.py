"""Diagnostic records attached to parses and analyses."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    message: str
    line: int
    column: int = 1
    severity: str = "note"  # "note" | "warning"
