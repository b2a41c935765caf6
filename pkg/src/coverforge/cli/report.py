"""Machine-readable claim reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PROVENANCE = ("PAPER", "TRIVIAL", "DERIVED")
STATUSES = ("pass", "fail", "skipped", "error")


@dataclass
class ClaimResult:
    claim_id: str
    location: str  # what the claim is about
    expected: object
    computed: object
    status: str
    provenance: str
    runtime: float = 0.0
    limit: float | None = None  # seconds
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def passed(self) -> bool | None:
        return None if self.status == "skipped" else self.status == "pass"

    def line(self) -> str:
        t = f"{self.runtime:.2f}s" + (f"/{self.limit:g}s" if self.limit else "")
        out = f"{self.claim_id}: {self.status} [{self.provenance}] {self.location}: expected {self.expected}, computed {self.computed} ({t})"
        return out + (f" -- {self.detail}" if self.detail else "")


@dataclass
class StageRecord:
    stage: str
    status: str  # "done", "skipped" or "error"
    detail: str = ""
    outputs: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    runtime: float = 0.0

    def line(self) -> str:
        out = f"stage {self.stage}: {self.status}"
        return out + (f" ({self.detail})" if self.detail else "")


@dataclass
class ClaimReport:
    claims: list[ClaimResult] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    stages: list[StageRecord] = field(default_factory=list)

    def add(self, c: ClaimResult) -> None:
        self.claims.append(c)

    def claim(self, cid: str) -> ClaimResult | None:
        return next((c for c in self.claims if c.claim_id == cid), None)

    @property
    def exit_code(self) -> int:
        bad = any(c.status in ("fail", "error") for c in self.claims) or any(s.status == "error" for s in self.stages)
        return 1 if bad else 0

    def to_dict(self, runtimes: bool = True) -> dict:
        rows = []
        for c in self.claims:
            d = asdict(c)
            d["expected"], d["computed"] = _jsonable(c.expected), _jsonable(c.computed)
            if not runtimes:
                d.pop("runtime")
            rows.append(d)
        stages = []
        for st in self.stages:
            d = asdict(st)
            if not runtimes:
                d.pop("runtime")
            stages.append(_jsonable(d))
        return {"config": _jsonable(self.config), "stages": stages, "claims": rows, "exit_code": self.exit_code}

    def to_json(self, runtimes: bool = True) -> str:
        return json.dumps(self.to_dict(runtimes), indent=2, sort_keys=True) + "\n"

    def lines(self) -> list[str]:
        return [s.line() for s in self.stages] + [c.line() for c in self.claims]


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return str(x)
