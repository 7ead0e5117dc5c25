"""Report index generation for pipeline runs."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from .jsonio import display_relative, save_json

ReportEntry = Dict[str, Any]

SUMMARY_FILENAME = "summary.json"


def report_filename(order: int, command: str) -> str:
    return f"{order:02d}_{command.replace(':', '_')}.json"


class ReportIndex:
    """Collects one entry per written report and writes ``summary.json``.

    Only the ``metadata`` block carries timestamps and the build tag; the rest
    is a function of the config and the seed.
    """

    def __init__(self, *, build_tag: str, output_dir: Path, seed: int, primes: List[int]) -> None:
        self.build_tag = build_tag
        self.output_dir = output_dir
        self.seed = seed
        self.primes = list(primes)
        self.entries: List[ReportEntry] = []
        self.highlights: Dict[str, Any] = {}

    def write_report(self, order: int, command: str, payload: Dict[str, Any]) -> Path:
        body = dict(payload)
        body.setdefault("command", command)
        body["seed"] = self.seed
        body["primes"] = self.primes
        path = save_json(body, self.output_dir / report_filename(order, command))
        self.entries.append(
            {
                "order": order,
                "command": command,
                "status": body.get("status", "pass"),
                "file_name": path.name,
            }
        )
        return path

    def skip(self, order: int, command: str, reason: str) -> None:
        self.entries.append({"order": order, "command": command, "status": "skipped", "reason": reason})

    def note(self, key: str, value: Any) -> None:
        self.highlights[key] = value

    def exit_code(self) -> int:
        statuses = [entry["status"] for entry in self.entries]
        if "error" in statuses:
            return 1
        if "fail" in statuses:
            return 2
        return 0

    def write(self, *, exit_code: Optional[int] = None) -> Path:
        summary_path = self.output_dir / SUMMARY_FILENAME
        payload = {
            "metadata": {
                "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z"),
                "build_tag": self.build_tag,
            },
            "seed": self.seed,
            "primes": self.primes,
            "exit_code": self.exit_code() if exit_code is None else exit_code,
            "total_reports": len(self.entries),
            "items": sorted(self.entries, key=lambda entry: entry["order"]),
            **self.highlights,
        }
        save_json(payload, summary_path)
        print(f"Summary updated: {display_relative(summary_path)}")
        return summary_path
