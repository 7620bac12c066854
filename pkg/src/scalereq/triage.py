"""Shortlisting critical operations from ordinal work/load scores.

Each score maps to a rank (L=1, M=2, H=3, VH=4) and the work x load
product drives a proposal: critical at or above the rule's threshold,
needs_review when a score is unknown or a very-high score sits below the
threshold, non_critical otherwise. An expert decision recorded on the
operation always wins over the proposal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import Criticality, Model, Operation, OrdinalScore, Provenance, TriageRule

RANK = {
    OrdinalScore.LOW: 1,
    OrdinalScore.MEDIUM: 2,
    OrdinalScore.HIGH: 3,
    OrdinalScore.VERY_HIGH: 4,
}


class TriageOutcome(str, Enum):
    CRITICAL = "critical"
    NON_CRITICAL = "non_critical"
    NEEDS_REVIEW = "needs_review"
    PENDING = "pending"


def score_product(work: OrdinalScore, load: OrdinalScore) -> int | None:
    """Rank product of the two scores; None when either is unknown."""
    if work is OrdinalScore.UNKNOWN or load is OrdinalScore.UNKNOWN:
        return None
    return RANK[work] * RANK[load]


def propose(work: OrdinalScore, load: OrdinalScore, rule: TriageRule) -> TriageOutcome:
    product = score_product(work, load)
    if product is None:
        return TriageOutcome.NEEDS_REVIEW
    if product >= rule.critical_min_product:
        return TriageOutcome.CRITICAL
    if rule.review_on_vh and OrdinalScore.VERY_HIGH in (work, load):
        return TriageOutcome.NEEDS_REVIEW
    return TriageOutcome.NON_CRITICAL


@dataclass(frozen=True)
class TriageRow:
    operation: str
    work: OrdinalScore
    load: OrdinalScore
    product: int | None
    proposal: TriageOutcome
    final: TriageOutcome  # critical, non_critical or pending
    override_applied: bool
    provenance: Provenance | None


@dataclass(frozen=True)
class TriageCounts:
    critical: int
    non_critical: int
    pending: int


@dataclass(frozen=True)
class TriageResult:
    rows: tuple[TriageRow, ...]
    counts: TriageCounts

    def finals(self) -> dict[str, TriageOutcome]:
        return {row.operation: row.final for row in self.rows}

    def to_payload(self) -> dict:
        rows = []
        for row in self.rows:
            entry = {
                "operation": row.operation,
                "load": row.load.value,
                "work": row.work.value,
                "product": row.product,
                "proposal": row.proposal.value,
                "final": row.final.value,
                "override_applied": row.override_applied,
            }
            if row.provenance is not None:
                entry["provenance"] = {
                    "source": row.provenance.source,
                    "date": row.provenance.date,
                    "note": row.provenance.note,
                }
            rows.append(entry)
        return {
            "rows": rows,
            "counts": {
                "critical": self.counts.critical,
                "non_critical": self.counts.non_critical,
                "pending": self.counts.pending,
            },
        }


def _decide(op: Operation, proposal: TriageOutcome) -> tuple[TriageOutcome, bool]:
    if op.critical is Criticality.YES:
        return TriageOutcome.CRITICAL, proposal is not TriageOutcome.CRITICAL
    if op.critical is Criticality.NO:
        return TriageOutcome.NON_CRITICAL, proposal is not TriageOutcome.NON_CRITICAL
    if proposal in (TriageOutcome.CRITICAL, TriageOutcome.NON_CRITICAL):
        return proposal, False
    return TriageOutcome.PENDING, False


def triage(m: Model) -> TriageResult:
    """Apply the model's triage rule to every operation, in declared order."""
    rows = []
    for op in m.operations:
        proposal = propose(op.work, op.load, m.triage_rule)
        final, overridden = _decide(op, proposal)
        rows.append(TriageRow(
            operation=op.name,
            work=op.work,
            load=op.load,
            product=score_product(op.work, op.load),
            proposal=proposal,
            final=final,
            override_applied=overridden,
            provenance=op.criticality_provenance,
        ))
    counts = TriageCounts(
        critical=sum(1 for r in rows if r.final is TriageOutcome.CRITICAL),
        non_critical=sum(1 for r in rows if r.final is TriageOutcome.NON_CRITICAL),
        pending=sum(1 for r in rows if r.final is TriageOutcome.PENDING),
    )
    return TriageResult(rows=tuple(rows), counts=counts)
