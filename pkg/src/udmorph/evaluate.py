"""UAS/LAS scoring of predicted dependency structures against gold.

Predicted rows align to gold tokens by id; a gold token is head-correct iff
an aligned row exists with an equal head, and label-correct iff additionally
the deprel matches exactly.  Alignment is order-independent: when several
rows claim the same id with conflicting payloads, none of them aligns.
Surplus, duplicate-conflicting and out-of-range rows are tallied but never
scored, so arbitrarily degraded generative output still yields a report
instead of an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .conllu import Sentence
from .itdata import ParsedRow


class EvalError(ValueError):
    pass


def _percentage(numerator: int, denominator: int) -> float:
    if denominator == 0:
        return 0.0
    value = Decimal(100 * numerator) / Decimal(denominator)
    return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class EvalReport:
    total_tokens: int
    head_correct: int
    both_correct: int
    unmatched_predicted_rows: int = 0
    missing_gold_rows: int = 0

    @property
    def uas(self) -> float:
        return _percentage(self.head_correct, self.total_tokens)

    @property
    def las(self) -> float:
        return _percentage(self.both_correct, self.total_tokens)


@dataclass(frozen=True)
class DeltaReport:
    uas_delta: float
    las_delta: float


def score(
    gold: Sequence[Sentence],
    predicted: Sequence[Sequence[ParsedRow]],
    *,
    exclude_punct: bool = False,
) -> EvalReport:
    """Score sentence-aligned predictions; all tokens count unless excluded."""
    if len(gold) != len(predicted):
        raise EvalError(
            f"sentence count mismatch: {len(gold)} gold vs {len(predicted)} predicted"
        )
    total = head_correct = both_correct = unmatched = missing = 0
    for sentence, rows in zip(gold, predicted):
        gold_ids = {t.id for t in sentence.tokens}
        claims: dict[int, set[tuple[int | None, str | None]]] = {}
        copies: dict[int, int] = {}
        for row in rows:
            if row.id in gold_ids:
                claims.setdefault(row.id, set()).add((row.head, row.deprel))
                copies[row.id] = copies.get(row.id, 0) + 1
            else:
                unmatched += 1
        aligned: dict[int, tuple[int | None, str | None]] = {}
        for row_id, payloads in claims.items():
            if len(payloads) == 1:
                aligned[row_id] = next(iter(payloads))
                unmatched += copies[row_id] - 1
            else:
                unmatched += copies[row_id]
        for token in sentence.tokens:
            if exclude_punct and token.upos == "PUNCT":
                continue
            total += 1
            payload = aligned.get(token.id)
            if payload is None:
                missing += 1
                continue
            head, deprel = payload
            if head is not None and head == token.head:
                head_correct += 1
                if deprel is not None and deprel == token.deprel:
                    both_correct += 1
    return EvalReport(total, head_correct, both_correct, unmatched, missing)


def compare(report_a: EvalReport, report_b: EvalReport) -> DeltaReport:
    """Signed metric deltas of b over a; both reports must cover the same gold."""
    if report_a.total_tokens != report_b.total_tokens:
        raise EvalError(
            f"token count mismatch: {report_a.total_tokens} vs {report_b.total_tokens}"
        )
    uas_delta = Decimal(str(report_b.uas)) - Decimal(str(report_a.uas))
    las_delta = Decimal(str(report_b.las)) - Decimal(str(report_a.las))
    return DeltaReport(float(uas_delta), float(las_delta))


def format_report(report: EvalReport) -> str:
    lines = [
        "metric        value",
        f"UAS           {report.uas:.2f}",
        f"LAS           {report.las:.2f}",
        "",
        f"total\t{report.total_tokens}",
        f"head_correct\t{report.head_correct}",
        f"both_correct\t{report.both_correct}",
        f"uas\t{report.uas:.2f}",
        f"las\t{report.las:.2f}",
        f"unmatched\t{report.unmatched_predicted_rows}",
        f"missing\t{report.missing_gold_rows}",
    ]
    return "\n".join(lines) + "\n"
