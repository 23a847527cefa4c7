"""vtseval: score video summaries through their text annotations.

A summary (a subset of a video's subshots) is turned into text by
concatenating the subshots' one-sentence annotations, then scored against
human-written reference summaries with unigram + skip-bigram
co-occurrence (best reference wins). The package also ships reproducible
baseline summarizers and the comparison harness used to study agreement
with a pixel-based distance metric.
"""

__version__ = "0.1.0"

from .corpus import (
    CorpusError,
    CorpusIOError,
    CorpusParseError,
    CorpusValidationError,
    GroundTruthSentence,
    GroundTruthSummary,
    Subshot,
    SubshotFeatures,
    SummarySelection,
    VideoRecord,
)
from .evaluator import EvaluationReport, length_adjust, score_summary, text_representation
from .rouge import RougeScore, rouge_n, rouge_su

__all__ = [
    "CorpusError",
    "CorpusIOError",
    "CorpusParseError",
    "CorpusValidationError",
    "EvaluationReport",
    "GroundTruthSentence",
    "GroundTruthSummary",
    "RougeScore",
    "Subshot",
    "SubshotFeatures",
    "SummarySelection",
    "VideoRecord",
    "length_adjust",
    "rouge_n",
    "rouge_su",
    "score_summary",
    "text_representation",
    "__version__",
]
