"""Verification reports and their JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .series import Mismatch

PASS, FAIL, ERROR = "pass", "fail", "error"


def rational_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


@dataclass
class VerificationReport:
    id: str
    order: int
    status: str
    elapsed_ms: int = 0
    mismatch: Mismatch | None = None
    context: dict = field(default_factory=dict)
    message: str | None = None

    def __post_init__(self):
        if self.status == FAIL and self.mismatch is None:
            raise ValueError("a failing report must carry a mismatch")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "order": self.order,
            "status": self.status,
            "elapsed_ms": int(self.elapsed_ms),
        }
        if self.mismatch is not None:
            out["mismatch"] = {
                "exponent": self.mismatch.exponent,
                "lhs": rational_str(self.mismatch.lhs),
                "rhs": rational_str(self.mismatch.rhs),
            }
        if self.context:
            out["context"] = {k: str(v) for k, v in self.context.items()}
        if self.message:
            out["message"] = self.message
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def summary(self) -> str:
        line = f"{self.status.upper():5} {self.id:24} order={self.order:<5} {self.elapsed_ms:>7} ms"
        if self.mismatch is not None:
            m = self.mismatch
            line += f"  first mismatch q^{m.exponent}: {m.lhs} != {m.rhs}"
        if self.context:
            line += "  [" + ", ".join(f"{k}={v}" for k, v in self.context.items()) + "]"
        if self.message:
            line += f"  {self.message}"
        return line


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["id", "order", "status", "elapsed_ms"],
    "properties": {
        "id": {"type": "string"},
        "order": {"type": "integer", "minimum": 0},
        "status": {"enum": [PASS, FAIL, ERROR]},
        "elapsed_ms": {"type": "integer", "minimum": 0},
        "mismatch": {
            "type": "object",
            "required": ["exponent", "lhs", "rhs"],
            "additionalProperties": False,
            "properties": {
                "exponent": {"type": "integer", "minimum": 0},
                "lhs": {"type": "string", "pattern": r"^-?\d+/\d+$"},
                "rhs": {"type": "string", "pattern": r"^-?\d+/\d+$"},
            },
        },
        "context": {"type": "object", "additionalProperties": {"type": "string"}},
        "message": {"type": "string"},
    },
    "additionalProperties": False,
    "if": {"properties": {"status": {"const": FAIL}}},
    "then": {"required": ["mismatch"]},
}


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def ms(self) -> int:
        return int((time.perf_counter() - self.start) * 1000)
