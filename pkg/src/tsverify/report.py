"""Report rows, summaries, and serialization.

A report is rows plus a summary plus provenance.  Row ordering is fixed
by (scenario, check, function_id) so identical campaigns serialize to
identical bytes whatever the worker count; only runtime_ms varies
between runs.
"""

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass

from . import __version__

#: Row fields, in serialization order.
ROW_FIELDS = (
    "scenario",
    "check",
    "function_id",
    "lhs",
    "rhs",
    "margin",
    "residual_max",
    "passed",
    "runtime_ms",
)

#: Wording of the substitutions and conventions baked into the checks,
#: echoed in every report so results are interpretable on their own.
SUBSTITUTION_NOTES = (
    "representation identities are generated parametrically from the "
    "telescoping construction: corner slots take sigma(base) on low axes "
    "and the box maximum on high axes",
    "the corner/edge/face weighting evaluates its double-substitution "
    "terms at f(b1,b2,z), f(b1,y,b3), f(x,b2,b3)",
    "all triple integrals run over [sigma_i(base_i), b_i) on each axis",
    "the deviation check reports the sup-norm product bound as rhs and "
    "carries the tighter integral variants in the check details",
)


@dataclass(frozen=True)
class Row:
    """One check outcome.  Numeric fields are None when the check
    errored or the quantity does not apply."""

    scenario: str
    check: str
    function_id: str
    lhs: float
    rhs: float
    margin: float
    residual_max: float
    passed: bool
    runtime_ms: float


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple
    summary: dict
    provenance: dict

    def to_json(self):
        doc = {
            "rows": [asdict(r) for r in self.rows],
            "summary": self.summary,
            "provenance": self.provenance,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(ROW_FIELDS)
        for r in self.rows:
            d = asdict(r)
            writer.writerow(["" if d[k] is None else d[k] for k in ROW_FIELDS])
        return buf.getvalue()

    @property
    def all_passed(self):
        return self.summary["failed"] == 0


def config_digest(text):
    """Hex sha256 of the raw config document."""
    if isinstance(text, str):
        text = text.encode("utf-8")
    return hashlib.sha256(text).hexdigest()


def build_report(rows, config_hash, seed):
    """Sort rows canonically and assemble summary and provenance."""
    rows = tuple(sorted(rows, key=lambda r: (r.scenario, r.check, r.function_id)))
    passed = sum(1 for r in rows if r.passed)
    margins = [r.margin for r in rows if r.margin is not None]
    residuals = [r.residual_max for r in rows if r.residual_max is not None]
    summary = {
        "total": len(rows),
        "passed": passed,
        "failed": len(rows) - passed,
        "worst_margin": min(margins) if margins else None,
        "worst_residual": max(residuals) if residuals else None,
    }
    provenance = {
        "config_sha256": config_hash,
        "seed": seed,
        "tool_version": __version__,
        "identity_substitution_notes": list(SUBSTITUTION_NOTES),
    }
    return VerificationReport(rows=rows, summary=summary, provenance=provenance)
