"""Summary scoring: text representation, length adjustment, best-reference score.

A summary's text representation is the annotation of each selected
subshot in temporal order. Before scoring, each human reference is
length-adjusted to the summary's subshot count: its top-n ranked
sentences, re-sorted temporally. The summary score is the maximum
F-measure over the adjusted references.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import (
    CorpusParseError,
    GroundTruthSummary,
    SummarySelection,
    VideoRecord,
    read_json,
    write_canonical,
)
from .rouge import RougeScore, rouge_n, rouge_su

METRICS = ("rouge-su", "rouge-1", "rouge-2")


@dataclass(frozen=True)
class EvaluationReport:
    summary_id: str
    length_used: int
    per_ground_truth: tuple[tuple[str, RougeScore], ...]
    best_author: str
    score: float

    def to_dict(self) -> dict:
        return {
            "summary_id": self.summary_id,
            "length_used": self.length_used,
            "per_ground_truth": [
                {
                    "author_id": author,
                    "precision": s.precision,
                    "recall": s.recall,
                    "f": s.f_measure,
                }
                for author, s in self.per_ground_truth
            ],
            "best_author": self.best_author,
            "score": self.score,
        }


def text_representation(summary: SummarySelection, video: VideoRecord) -> list[str]:
    """Annotations of the selected subshots, ascending temporal order."""
    for idx in summary.indices:
        if idx < 0 or idx >= len(video):
            raise ValueError(f"subshot index {idx} out of range for {len(video)}-subshot video")
    return [video.subshots[i].annotation for i in summary.indices]


def length_adjust(gt: GroundTruthSummary, n: int) -> list[str]:
    """Top-n ranked sentences of a ground truth, re-sorted temporally."""
    if n < 1:
        raise ValueError(f"adjusted length must be >= 1, got {n}")
    top = sorted(gt.sentences, key=lambda s: s.rank)[: min(n, len(gt.sentences))]
    return [s.text for s in sorted(top, key=lambda s: s.temporal_pos)]


def _score_pair(metric: str, candidate: list[str], reference: list[str], stopwords) -> RougeScore:
    if metric == "rouge-su":
        return rouge_su(candidate, reference, stopwords)
    if metric == "rouge-1":
        return rouge_n(candidate, reference, 1, stopwords)
    if metric == "rouge-2":
        return rouge_n(candidate, reference, 2, stopwords)
    raise ValueError(f"unknown metric {metric!r}, expected one of {', '.join(METRICS)}")


def score_summary(
    summary: SummarySelection,
    video: VideoRecord,
    gts: list[GroundTruthSummary],
    metric: str = "rouge-su",
    stopwords: frozenset[str] | None = None,
    summary_id: str | None = None,
) -> EvaluationReport:
    """Score a summary against every ground truth; keep all pairwise scores.

    The reported score is the maximum F-measure; ties on the best author
    go to the earliest ground truth in the list.
    """
    if not gts:
        raise ValueError("at least one ground-truth summary is required")
    if len(summary) == 0:
        raise ValueError("cannot score an empty summary")
    candidate = text_representation(summary, video)
    n = len(summary)
    pairwise = []
    for gt in gts:
        reference = length_adjust(gt, n)
        pairwise.append((gt.author_id, _score_pair(metric, candidate, reference, stopwords)))
    best_author, best = max(pairwise, key=lambda item: item[1].f_measure)
    # max() keeps the first maximum, which is the tie-break we want
    return EvaluationReport(
        summary_id=summary_id if summary_id is not None else summary.video_id,
        length_used=n,
        per_ground_truth=tuple(pairwise),
        best_author=best_author,
        score=best.f_measure,
    )


def save_report(path, report: EvaluationReport, extra: dict | None = None) -> None:
    """Write a report in canonical form, optionally with provenance fields."""
    payload = report.to_dict()
    if extra:
        payload.update(extra)
    write_canonical(path, payload)


def load_report(path) -> EvaluationReport:
    data = read_json(path)
    try:
        per_gt = tuple(
            (
                row["author_id"],
                RougeScore(
                    precision=row["precision"],
                    recall=row["recall"],
                    f_measure=row["f"],
                    match_count=0,
                    candidate_units=0,
                    reference_units=0,
                ),
            )
            for row in data["per_ground_truth"]
        )
        return EvaluationReport(
            summary_id=data["summary_id"],
            length_used=data["length_used"],
            per_ground_truth=per_gt,
            best_author=data["best_author"],
            score=data["score"],
        )
    except (KeyError, TypeError) as exc:
        raise CorpusParseError(f"{path}: malformed report: {exc}") from exc
