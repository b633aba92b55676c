"""
Verification reports and the versioned report document
Every identity check in the toolkit produces a VerificationReport
"""

import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
REPORT_DIGITS = 30


@dataclass(frozen=True)
class VerificationReport:
    """One named check: computed vs expected with residuals and verdict"""
    name: str
    eq: str
    computed: object
    expected: object
    absResidual: object
    relResidual: object
    tolerance: object
    passed: bool
    note: str = ""
    details: tuple = field(default=())

    @classmethod
    def fromValues(cls, name, eq, computed, expected, ctx, tolerance=None, note=""):
        """Build a report under the context's residual policy"""
        tol = ctx.tol if tolerance is None else ctx.mpf(tolerance)
        absolute, relative, policy = ctx.residual(computed, expected)
        return cls(name, eq, computed, expected, absolute, relative, tol, bool(policy <= tol), note)

    @classmethod
    def fromResidual(cls, name, eq, residual, ctx, tolerance=None, note="", computed=None, expected=None):
        """Build a report from an already-normalized residual"""
        tol = ctx.tol if tolerance is None else ctx.mpf(tolerance)
        residual = abs(residual)
        return cls(name, eq, residual if computed is None else computed,
                   0 if expected is None else expected, residual, residual, tol,
                   bool(residual <= tol), note)

    @classmethod
    def advisory(cls, name, eq, computed, expected, ctx, note):
        """A documented-discrepancy report: residuals are recorded, the verdict is always pass"""
        absolute, relative, _ = ctx.residual(computed, expected)
        return cls(name, eq, computed, expected, absolute, relative, ctx.tol, True, note)

    @classmethod
    def exact(cls, name, eq, computed, expected, ctx, note=""):
        """Exact comparison of rationals or symbolic values: residual 0 or 1"""
        passed = computed == expected
        residual = 0 if passed else 1
        return cls(name, eq, str(computed), str(expected), residual, residual, 0, passed, note)

    @classmethod
    def combine(cls, name, eq, parts, note=""):
        """Aggregate several reports; passes iff every part passes"""
        parts = tuple(parts)
        worst = max(parts, key=lambda r: (not r.passed, r.absResidual))
        return cls(name, eq, worst.computed, worst.expected, worst.absResidual, worst.relResidual,
                   worst.tolerance, all(p.passed for p in parts), note, parts)

    def toDict(self, nstr, digits=REPORT_DIGITS):
        def render(value):
            if isinstance(value, (bool, int, str)) or value is None:
                return value
            return nstr(value, digits)

        out = {
            'name': self.name,
            'eq': self.eq,
            'computed': render(self.computed),
            'expected': render(self.expected),
            'absResidual': nstr(self.absResidual, 5),
            'relResidual': nstr(self.relResidual, 5),
            'tolerance': nstr(self.tolerance, 5),
            'passed': self.passed,
        }
        if self.note:
            out['note'] = self.note
        if self.details:
            out['details'] = [d.toDict(nstr, digits) for d in self.details]
        return out


@dataclass
class ReportDocument:
    """Versioned machine-readable output of one command"""
    command: str
    parameters: dict
    results: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    wallTime: float = 0.0
    schemaVersion: str = SCHEMA_VERSION

    @property
    def overallPass(self):
        return all(r.passed for r in self.results)

    def add(self, report):
        self.results.append(report)
        if not report.passed:
            logger.warning("check failed: %s (eq %s)", report.name, report.eq)
        return report

    def extend(self, reports):
        for report in reports:
            self.add(report)

    def toDict(self, nstr, includeWallTime=True):
        out = {
            'schemaVersion': self.schemaVersion,
            'command': self.command,
            'parameters': self.parameters,
            'results': [r.toDict(nstr) for r in self.results],
            'overallPass': self.overallPass,
        }
        if self.payload:
            out['payload'] = self.payload
        if includeWallTime:
            out['wallTime'] = round(self.wallTime, 3)
        return out

    def toJson(self, nstr, includeWallTime=True):
        return json.dumps(self.toDict(nstr, includeWallTime), indent=2, ensure_ascii=False, default=str)

    def toText(self, nstr):
        lines = ["=" * 60, f"{self.command}  (schema {self.schemaVersion})", "=" * 60]
        for key, value in self.parameters.items():
            lines.append(f"  {key}: {value}")
        if self.payload:
            lines.append("-" * 60)
            for key, value in self.payload.items():
                lines.append(f"  {key}: {value}")
        if self.results:
            lines.append("-" * 60)
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"  [{status}] {r.name} (eq {r.eq}) residual={nstr(r.absResidual, 3)}")
            if r.note:
                lines.append(f"         {r.note}")
        lines.append("-" * 60)
        lines.append(f"  overall: {'PASS' if self.overallPass else 'FAIL'}   wall time: {self.wallTime:.2f}s")
        return "\n".join(lines)
