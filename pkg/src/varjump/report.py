"""Structured outcome of a single verification check."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check_id: str
    passed: bool
    measured: dict
    tolerance: float
    metadata: dict = field(default_factory=dict)
    # per-member rows for the optional CSV export; not part of the JSON report
    details: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "passed": bool(self.passed),
            "measured": {k: _plain(v) for k, v in self.measured.items()},
            "tolerance": float(self.tolerance),
            "metadata": _plain(self.metadata),
        }


def _plain(value):
    """Convert numpy scalars/arrays and tuples into JSON-friendly values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return _plain(value.tolist())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return float(value)
