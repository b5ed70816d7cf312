"""Tiny result types shared by all exhaustive verifiers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LawCheck:
    """Outcome of one exhaustive law scan; witness is the first countercase."""

    name: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "witness": _jsonable(self.witness),
                "detail": self.detail}


@dataclass(frozen=True)
class CheckReport:
    """A bundle of law checks; ok iff all passed."""

    checks: tuple[LawCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[LawCheck]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}

    def __getitem__(self, name: str) -> LawCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _jsonable(value):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    return value
