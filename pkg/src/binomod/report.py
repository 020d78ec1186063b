"""Run configuration, verification summaries and their serialization.

JSON output uses sorted keys and contains no timestamps or timings (unless
``timings`` is switched on), so equal configurations give equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

from .binom import require_prime
from .field import Q_MAX
from .periodicity import K_MAX_LIMIT, ScanReport

__all__ = ["CSV_COLUMNS", "OUTPUT_DIR_ENV", "RunConfig", "VerificationSummary", "emit_report", "write_report"]

OUTPUT_DIR_ENV = "BINOMOD_OUTPUT_DIR"
CSV_COLUMNS = ("theorem_id", "p", "k", "h", "s", "q", "subgroup_order", "verdict", "detail")
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    primes: list[int] = field(default_factory=lambda: [2, 3, 5, 7, 11])
    k_max: int = 300
    q_max: int = 343
    s_max: int = 2
    ps_max: int = 625
    output_format: str = "json"
    output_path: str | None = None
    render_scale: int | None = None
    jobs: int = 1
    timings: bool = False
    inject_violation: str | None = None

    def __post_init__(self) -> None:
        if not self.primes:
            raise ValueError("at least one prime is required")
        self.primes = sorted({require_prime(int(p)) for p in self.primes})
        if not 0 <= self.k_max <= K_MAX_LIMIT:
            raise ValueError(f"k_max must be in [0, {K_MAX_LIMIT}]")
        if not 2 <= self.q_max <= Q_MAX:
            raise ValueError(f"q_max must be in [2, {Q_MAX}]")
        if self.s_max < 0 or self.ps_max < 1:
            raise ValueError("s_max and ps_max must be nonnegative")
        if self.output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}")
        if self.render_scale is not None and self.render_scale < 1:
            raise ValueError("render_scale must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        # only the grid parameters; output routing does not change results
        d = asdict(self)
        for key in ("output_path", "output_format", "render_scale", "jobs", "timings"):
            d.pop(key)
        return d


@dataclass
class VerificationSummary:
    summaries: list[ScanReport]
    config: RunConfig
    wall_times: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.ok for s in self.summaries)

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        items = []
        for j, s in enumerate(self.summaries):
            d = s.to_dict()
            if timings and j < len(self.wall_times):
                d["wall_time"] = round(self.wall_times[j], 3)
            items.append(d)
        return {"config": self.config.to_dict(), "summaries": items, "pass": self.passed}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationSummary":
        cfg = RunConfig.from_mapping(data["config"])
        return cls([ScanReport.from_dict(s) for s in data["summaries"]], cfg)


def _csv_rows(summary: VerificationSummary) -> list[list[str]]:
    rows = []
    for s in summary.summaries:
        rows.append([s.theorem_id, "", "", "", "", "", "", "pass" if s.ok else "fail",
                     f"{s.parameter_space}: {s.instances_checked} instances, {len(s.violations)} violations"])
        for v in s.violations:
            params = dict(v.params)
            if "G_order" in params:
                params["subgroup_order"] = params.pop("G_order")
            cells = [str(params.pop(c, "")) for c in CSV_COLUMNS[1:7]]
            extra = ";".join(f"{key}={params[key]}" for key in sorted(params))
            detail = "; ".join(t for t in (extra, v.detail) if t)
            rows.append([s.theorem_id, *cells, "violation", detail])
    return rows


def emit_report(summary: VerificationSummary, cfg: RunConfig | None = None) -> str:
    """Serialize ``summary`` in ``cfg.output_format``."""
    cfg = cfg or summary.config
    if cfg.output_format == "json":
        return json.dumps(summary.to_dict(cfg.timings), sort_keys=True, indent=2) + "\n"
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(_csv_rows(summary))
        return buf.getvalue()
    lines = []
    for j, s in enumerate(summary.summaries):
        line = f"{s.theorem_id} {s.parameter_space}: {s.instances_checked} instances, {len(s.violations)} violations"
        if cfg.timings and j < len(summary.wall_times):
            line += f" ({summary.wall_times[j]:.2f}s)"
        lines.append(line)
    lines.append(f"pass={'true' if summary.passed else 'false'}")
    return "\n".join(lines) + "\n"


def resolve_output(path: str) -> Path:
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def write_report(text: str | bytes, path: str) -> Path:
    """Write to ``path`` (relative paths resolve against ``$BINOMOD_OUTPUT_DIR``)."""
    out = resolve_output(path)
    if isinstance(text, bytes):
        out.write_bytes(text)
    else:
        out.write_text(text, encoding="utf-8")
    return out
