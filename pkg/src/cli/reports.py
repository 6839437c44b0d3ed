"""
Report objects and their JSON and text renderings.

Rationals are written as "a/b" strings and points and divisors in document
syntax, so reports stay exact and can be pasted back into a .tdc file.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, VertexPoint, format_rational


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (VertexPoint, EdgePoint, ComponentPoint)):
        return str(value)
    if isinstance(value, Divisor):
        return {str(point): coefficient for point, coefficient in value.items()}
    if isinstance(value, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    return str(value)


@dataclass
class Report:
    """Outcome of one command: what was asked, what came out, and the evidence."""

    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    result: Dict[str, Any] = field(default_factory=dict)
    certificate: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    passed: bool = True

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "result": to_jsonable(self.result),
            "certificate": to_jsonable(self.certificate),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines: List[str] = [f"{self.command}:"]
        for key, value in to_jsonable(self.result).items():
            lines.append(f"  {key}: {_flat(value)}")
        certificate = to_jsonable(self.certificate)
        if certificate:
            lines.append("certificate:")
            for key, value in certificate.items():
                lines.append(f"  {key}: {_flat(value)}")
        return "\n".join(lines)


def _flat(value: Any) -> str:
    if isinstance(value, list):
        return ", ".join(_flat(v) for v in value) or "-"
    if isinstance(value, dict):
        return " + ".join(f"{c}*{p}" if c != 1 else p for p, c in value.items()) or "0"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)
