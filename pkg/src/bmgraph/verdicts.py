"""Shared verdict containers: checks that pass/fail and staged rejections."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural or axiom check; stage names the first failure."""

    ok: bool
    stage: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Rejection:
    """A recognition step failed; ``stage`` says which, ``witness`` why."""

    stage: str
    witness: object = None
