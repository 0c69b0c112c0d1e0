"""Verification records and their JSON form.

Schema (version 1)::

    {
      "schema": "zetalab.verification/1",
      "status": "pass" | "fail",
      "checks": [
        {"id": str, "identity": str, "inputs": {...}, "value": num|[re, im],
         "reference": num|[re, im], "residual": float, "tolerance": float,
         "status": "pass" | "fail", "oracle": "PAPER" | "TRIVIAL" | "DERIVED"}
      ],
      "timings": {suite: seconds}
    }

Complex numbers are stored as two-element ``[re, im]`` lists.  ``timings``
is the only section allowed to differ between runs with the same seed;
`VerificationReport.canonical` excludes it.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA = "zetalab.verification/1"
ORACLES = ("PAPER", "TRIVIAL", "DERIVED")


def _encode(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "item"):      # numpy scalars
        return _encode(x.item())
    if isinstance(x, dict):
        return {k: _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    return x


@dataclass
class CheckRecord:
    id: str
    identity: str
    inputs: dict
    value: object
    reference: object
    residual: float
    tolerance: float
    oracle: str
    status: str = ""

    def __post_init__(self):
        if self.oracle not in ORACLES:
            raise ValueError(f"oracle must be one of {ORACLES}")
        self.residual = float(self.residual)
        if not self.status:
            self.status = "pass" if self.residual <= self.tolerance else "fail"

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return _encode(asdict(self))


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, record):
        self.checks.append(record)
        return record

    def extend(self, other):
        self.checks.extend(other.checks)
        self.timings.update(other.timings)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, check_id):
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "timings": dict(self.timings),
        }

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def canonical(self):
        """JSON text without timings; stable across runs with the same seed."""
        d = self.to_dict()
        d.pop("timings")
        return json.dumps(d, indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        checks = [CheckRecord(**c) for c in d["checks"]]
        return cls(checks, dict(d.get("timings", {})))

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))

    def summary_lines(self):
        for c in self.checks:
            yield f"{c.status.upper():4s}  {c.id:40s} residual={c.residual:.3e}  tol={c.tolerance:.1e}"
