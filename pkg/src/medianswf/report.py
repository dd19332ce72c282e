"""Check reports shared by the validators, the axiom checkers and the suites."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive-sampled"

SCHEMA_VERSION = "1.0"


@dataclass
class Scope:
    mode: str  # "exhaustive" | "sampled"
    m: int
    n: int | None = None
    domain_size: int | None = None
    seed: int | None = None
    samples: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class CheckReport:
    """Outcome of one check.

    ``verdict`` is ``fails`` only with a replayable ``witness``; a sampled run
    that finds nothing is ``inconclusive-sampled``, never ``holds``.
    """

    axiom: str
    rule: str
    scope: Scope
    verdict: str
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "axiom": self.axiom,
            "rule": self.rule,
            "scope": self.scope.to_dict(),
            "verdict": self.verdict,
            "witness": self.witness,
            "details": self.details,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


def verdict_for(found: bool, exhaustive: bool) -> str:
    if found:
        return FAILS
    return HOLDS if exhaustive else INCONCLUSIVE


class Timer:
    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> None:
        self.elapsed = time.perf_counter() - self.start
