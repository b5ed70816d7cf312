"""Run configuration and machine/human-readable reports.

A Report is a list of named sections, each wrapping a CheckReport plus
free-form facts.  The JSON rendering is canonical (sorted keys, fixed
indentation, no volatile data unless timings are explicitly enabled), so
identical inputs produce byte-identical reports regardless of worker count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._backend import active_backend, default_jobs
from .checks import CheckReport
from .semantics import VALUATION_CAP
from .upsets import UPSET_CAP


@dataclass(frozen=True)
class RunConfig:
    cap_upsets: int = UPSET_CAP
    cap_valuations: int = VALUATION_CAP
    cap_family: int = 3
    jobs: int = 0                      # 0: use BROUWERLAB_JOBS or 1
    seed: int = 0
    fmt: str = "text"
    corpus_path: str | None = None
    allow_large: bool = False
    timings: bool = False

    def resolved_jobs(self) -> int:
        return self.jobs if self.jobs > 0 else default_jobs()

    def as_dict(self) -> dict:
        # deliberately omits the worker count: reports must be byte-identical
        # for any parallelism degree
        return {
            "cap_upsets": self.cap_upsets,
            "cap_valuations": self.cap_valuations,
            "cap_family": self.cap_family,
            "seed": self.seed,
            "corpus": self.corpus_path,
            "allow_large": self.allow_large,
            "backend": active_backend(),
        }


@dataclass(frozen=True)
class Section:
    name: str
    title: str
    report: CheckReport
    facts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.report.ok

    def as_dict(self) -> dict:
        return {"name": self.name, "title": self.title, "ok": self.ok,
                "facts": self.facts, "checks": [c.as_dict() for c in self.report.checks]}


@dataclass
class Report:
    command: str
    config: RunConfig
    sections: list[Section] = field(default_factory=list)
    timings: dict | None = None

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    def add(self, section: Section) -> None:
        self.sections.append(section)

    def as_dict(self) -> dict:
        doc = {
            "command": self.command,
            "config": self.config.as_dict(),
            "ok": self.ok,
            "sections": [s.as_dict() for s in self.sections],
        }
        if self.config.timings and self.timings is not None:
            doc["timings"] = self.timings
        return doc

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for s in self.sections:
            status = "PASS" if s.ok else "FAIL"
            lines.append(f"[{status}] {s.name}: {s.title}")
            for key, val in s.facts.items():
                lines.append(f"    {key}: {val}")
            for c in s.report.checks:
                if c.ok:
                    continue
                wit = f" witness={c.witness}" if c.witness is not None else ""
                det = f" ({c.detail})" if c.detail else ""
                lines.append(f"    fail: {c.name}{wit}{det}")
        if self.config.timings and self.timings is not None:
            for key, val in sorted(self.timings.items()):
                lines.append(f"time {key}: {val:.3f}s")
        lines.append(f"result: {'all checks passed' if self.ok else 'FAILURES PRESENT'}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.to_json() if self.config.fmt == "json" else self.to_text()
