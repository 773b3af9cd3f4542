"""Verification reports and the JSON run document."""
from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional

from .ff import RNG_ALGORITHM, FieldSpec

LOGGER = logging.getLogger(__name__)

TOOL_NAME = "hermitinv"
REPORTS_ENV = "HERMITINV_REPORTS_DIR"
DEFAULT_REPORTS_DIR = "reports"


@dataclass
class VerificationReport:
    """Outcome of one check.

    A failing report always carries at least one witness: when the caller
    supplies none, one ``mismatch`` witness is added per expected key whose
    observed value differs.
    """

    check: str
    q: int
    params: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    observed: Dict[str, Any] = field(default_factory=dict)
    passed: bool = False
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.passed or self.witnesses:
            return
        for key, want in self.expected.items():
            got = self.observed.get(key)
            if got != want:
                self.witnesses.append({"kind": "mismatch", "key": key, "expected": want, "observed": got})
        if not self.witnesses:
            self.witnesses.append({"kind": "mismatch", "key": None, "expected": None, "observed": None})

    @classmethod
    def compare(
        cls,
        check: str,
        q: int,
        expected: Mapping[str, Any],
        observed: Mapping[str, Any],
        params: Optional[Mapping[str, Any]] = None,
        witnesses: Optional[Iterable[Dict[str, Any]]] = None,
        notes: Optional[Iterable[str]] = None,
        require: bool = True,
    ) -> "VerificationReport":
        """Pass iff every expected key is observed with the same value and ``require`` holds."""
        matches = all(observed.get(k) == v for k, v in expected.items())
        report = cls(
            check=check,
            q=q,
            params=dict(params or {}),
            expected=dict(expected),
            observed=dict(observed),
            passed=bool(matches and require),
            witnesses=list(witnesses or []),
            notes=list(notes or []),
        )
        level = logging.INFO if report.passed else logging.WARNING
        LOGGER.log(level, "%s (q=%d): %s", check, q, "pass" if report.passed else "FAIL")
        return report

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "q": self.q,
            "params": self.params,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }


def run_document(
    command: str,
    seed: int,
    spec: Optional[FieldSpec],
    reports: Iterable[VerificationReport],
    skipped: Iterable[Dict[str, Any]] = (),
    timestamp: bool = True,
) -> Dict[str, Any]:
    from . import __version__

    checks = [r.to_dict() for r in reports]
    doc: Dict[str, Any] = {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "rng": RNG_ALGORITHM,
        "seed": seed,
        "field": spec.to_dict() if spec is not None else None,
        "checks": checks,
        "skipped": list(skipped),
        "pass": all(c["pass"] for c in checks),
    }
    if timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return doc


def dumps(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_name(command: str, q: int, seed: int) -> str:
    return f"{command}-q{q}-seed{seed}.json"


def resolve_reports_dir(explicit: Optional[Path] = None) -> Path:
    """Explicit path, else $HERMITINV_REPORTS_DIR, else ./reports."""
    if explicit is not None:
        return Path(explicit)
    return Path(os.environ.get(REPORTS_ENV) or DEFAULT_REPORTS_DIR)


@dataclass
class ReportWriter:
    reports_root: Path

    def __post_init__(self) -> None:
        self.reports_root = Path(self.reports_root)
        self.reports_root.mkdir(parents=True, exist_ok=True)

    def write(self, name: str, doc: Mapping[str, Any]) -> Path:
        """Write atomically: temp file in the same directory, then rename."""
        path = self.reports_root / name
        fd, tmp = tempfile.mkstemp(prefix=f".{name}.", suffix=".tmp", dir=str(self.reports_root))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(dumps(doc))
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        LOGGER.info("Report written to %s", path)
        return path


GOLDEN_KEYS = ("check", "q", "expected", "observed", "pass")


def golden_subset(report: VerificationReport) -> Dict[str, Any]:
    """The seed- and timing-independent part of a report, as kept in golden files."""
    data = report.to_dict()
    return {key: data[key] for key in GOLDEN_KEYS}
