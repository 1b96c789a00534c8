"""Suite reports.

Machine format, one record per line, checks sorted by name:

    suite <name> <key>=<value> ...
    check <name> <pass|fail> [residual=<expr>] [value=<text>]
    note <suite> <text>
    summary {"checks": N, "failed": F, "passed": P, "seed": S, "suites": K}

Human format prints the same checks as an aligned table.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    residual: str = ""
    note: str = ""

    def line(self):
        s = f"check {self.name} {'pass' if self.ok else 'fail'}"
        if not self.ok and self.residual:
            s += f" residual={_one_line(self.residual)}"
        if self.note:
            s += f" value={_one_line(self.note)}"
        return s


def _one_line(s):
    return " ".join(str(s).split())


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    duration: float = 0.0
    notes: list = field(default_factory=list)   # extra human-readable lines (tables)

    def add(self, name, ok, residual="", note=""):
        self.checks.append(Check(name, bool(ok), "" if ok else str(residual), note))

    def extend(self, results, prefix=""):
        for r in results:
            self.add(prefix + r.name, r.ok, r.residual)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: c.name)


def summary(reports, seed):
    checks = [c for r in reports for c in r.checks]
    failed = sum(not c.ok for c in checks)
    return {"checks": len(checks), "failed": failed, "passed": len(checks) - failed,
            "seed": seed, "suites": len(reports)}


def render_machine(reports, seed, timing=False):
    out = []
    for r in sorted(reports, key=lambda r: r.suite):
        head = " ".join(f"{k}={r.params[k]}" for k in sorted(r.params))
        out.append(f"suite {r.suite} {head}".rstrip())
        out.extend(c.line() for c in r.sorted_checks())
        out.extend(f"note {r.suite} {_one_line(x)}" for x in r.notes)
        if timing:
            out.append(f"time {r.suite} {r.duration:.3f}s")
    out.append("summary " + json.dumps(summary(reports, seed), sort_keys=True))
    return "\n".join(out) + "\n"


def render_human(reports, seed, timing=False):
    out = []
    for r in sorted(reports, key=lambda r: r.suite):
        head = ", ".join(f"{k}={r.params[k]}" for k in sorted(r.params))
        status = "ok" if r.ok else "FAILED"
        out.append(f"== {r.suite} ({head}) {status}")
        width = max((len(c.name) for c in r.checks), default=0)
        for c in r.sorted_checks():
            mark = "pass" if c.ok else "FAIL"
            line = f"  {c.name.ljust(width)}  {mark}"
            if c.note:
                line += f"  {c.note}"
            if not c.ok and c.residual:
                line += f"\n      residual: {_one_line(c.residual)}"
            out.append(line)
        out.extend("  " + x for x in r.notes)
        if timing:
            out.append(f"  ({r.duration:.2f}s)")
    s = summary(reports, seed)
    out.append(f"{s['passed']}/{s['checks']} checks passed in {s['suites']} suite(s), seed {seed}")
    return "\n".join(out) + "\n"


def render(reports, cfg):
    fn = render_machine if cfg.format == "machine" else render_human
    return fn(reports, cfg.seed, cfg.timing)
