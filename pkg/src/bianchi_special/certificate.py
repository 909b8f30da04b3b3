"""Serializable records of verified claims.

Matrix entries travel as decimal strings (``"-3/2"``) so nothing is lost
over JSON; small integers such as ``m`` and indices stay JSON integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Certificate"]


@dataclass
class Certificate:
    claim: str
    m: int | None
    foursquare: list[int] | None
    checks: list[dict[str, Any]]
    index: int | None
    passed: bool
    summary: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "m": self.m,
            "foursquare": self.foursquare,
            "checks": self.checks,
            "index": self.index,
            "summary": self.summary,
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        return cls(
            claim=d["claim"],
            m=d.get("m"),
            foursquare=d.get("foursquare"),
            checks=list(d.get("checks", [])),
            index=d.get("index"),
            passed=bool(d["pass"]),
            summary=dict(d.get("summary", {})),
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def first_failure(self) -> str | None:
        """Name of the first failed check, or None."""
        for key, ok in self.summary.get("identities", {}).items():
            if ok is False:
                return key
        for i, chk in enumerate(self.checks):
            verdict = chk.get("verdict", {})
            if not verdict.get("pass", True):
                bad = [k for k, v in verdict.items() if v is False and k != "pass"]
                return f"check[{i}] word={chk.get('word')!r}: {', '.join(bad) or 'failed'}"
        for key, ok in self.summary.get("claims", {}).items():
            if ok is False:
                return key
        return None if self.passed else "unspecified"
