"""Check registry, runner and report model."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import __version__

SCHEMA_VERSION = "lgcheck-report/1"
GROUPS = ("rep", "form", "lattice", "monodromy", "elliptic")
PROVENANCES = ("PAPER", "TRIVIAL", "DERIVED")


@dataclass(frozen=True)
class Check:
    check_id: str
    group: str
    description: str
    anchor: str
    provenance: str
    run: Callable[[], tuple[object, object]]  # -> (expected, computed)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    paper_anchor: str
    expected: str
    computed: str
    provenance: str
    passed: bool
    elapsed_ms: int = 0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "check_id": self.check_id,
            "description": self.description,
            "paper_anchor": self.paper_anchor,
            "expected": self.expected,
            "computed": self.computed,
            "provenance": self.provenance,
            "pass": self.passed,
        }
        if timings:
            out["elapsed"] = self.elapsed_ms
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self, timings: bool = False) -> dict:
        return {
            "version": self.version,
            "schema": SCHEMA_VERSION,
            "checks": [c.to_json(timings) for c in self.checks],
            "passed": self.passed,
            "failed": self.failed,
        }


def fmt(value) -> str:
    """Deterministic text for expected/computed values (no floats allowed)."""
    if isinstance(value, float):
        raise TypeError("floating point value in a report")
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        inner = ", ".join(fmt(v) for v in value)
        return f"[{inner}]" if isinstance(value, list) else f"({inner})"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{fmt(k)}: {fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def execute(check: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        expected, computed = check.run()
        exp_s, comp_s = fmt(expected), fmt(computed)
        passed = exp_s == comp_s
    except Exception as exc:  # a failing check is data, not a crash
        exp_s, comp_s, passed = "(no error)", f"error: {type(exc).__name__}: {exc}", False
    elapsed = int((time.perf_counter() - start) * 1000)
    return CheckResult(check.check_id, check.description, check.anchor, exp_s, comp_s,
                       check.provenance, passed, elapsed)


@dataclass
class RunOptions:
    only: Sequence[str] | None = None
    d: int = 3
    q: int = 2
    p: int = 2
    form_d: int | None = None
    modulus: int = 3
    generators: Sequence | None = None  # replaces the tabulated tau matrices
    jobs: int = 1


def build_checks(options: RunOptions) -> list[Check]:
    from . import checks

    groups = tuple(options.only) if options.only else GROUPS
    unknown = set(groups) - set(GROUPS)
    if unknown:
        raise ValueError(f"unknown check groups {sorted(unknown)}; choose from {GROUPS}")
    out = []
    for g in GROUPS:
        if g in groups:
            out.extend(checks.BUILDERS[g](options))
    return out


def run_all(options: RunOptions | None = None) -> VerificationReport:
    options = options or RunOptions()
    todo = build_checks(options)
    if options.jobs > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(execute, todo))  # map keeps registration order
    else:
        results = [execute(c) for c in todo]
    return VerificationReport(results)
