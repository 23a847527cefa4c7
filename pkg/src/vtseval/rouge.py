"""ROUGE-SU and ROUGE-N scoring by clipped multiset matching.

Units are extracted per sentence (pairs never cross sentence boundaries),
pooled over each text, and matched with per-unit clipping: each distinct
unit contributes min(candidate count, reference count). For ROUGE-SU,
unigrams and skip-bigrams share a single pool and count equally.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .textproc import extract_units, preprocess


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f_measure: float
    match_count: int
    candidate_units: int
    reference_units: int

    @classmethod
    def from_counts(cls, match_count: int, candidate_units: int, reference_units: int) -> "RougeScore":
        p = match_count / candidate_units if candidate_units else 0.0
        r = match_count / reference_units if reference_units else 0.0
        f = 2.0 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(
            precision=p,
            recall=r,
            f_measure=f,
            match_count=match_count,
            candidate_units=candidate_units,
            reference_units=reference_units,
        )


def count_matches(candidate_units: Counter, reference_units: Counter) -> int:
    """Sum over distinct units of min(candidate count, reference count)."""
    return sum((candidate_units & reference_units).values())


def _su_units(sentences: Sequence[str], stopwords) -> Counter:
    # Unigrams are wrapped as 1-tuples so they share a pool with 2-tuple
    # skip-bigrams without colliding.
    pool: Counter = Counter()
    for sentence in sentences:
        units = extract_units(sentence, stopwords)
        for token, n in units.unigrams.items():
            pool[(token,)] += n
        pool.update(units.skip_bigrams)
    return pool


def _ngram_units(sentences: Sequence[str], n: int, stopwords) -> Counter:
    pool: Counter = Counter()
    for sentence in sentences:
        stems = preprocess(sentence, stopwords)
        pool.update(tuple(stems[i : i + n]) for i in range(len(stems) - n + 1))
    return pool


def rouge_su(
    candidate: Sequence[str],
    reference: Sequence[str],
    stopwords: frozenset[str] | None = None,
) -> RougeScore:
    """Unigram + skip-bigram co-occurrence score between two texts.

    Either side may be empty; a side without units scores zero.
    """
    cand = _su_units(candidate, stopwords)
    ref = _su_units(reference, stopwords)
    return RougeScore.from_counts(count_matches(cand, ref), sum(cand.values()), sum(ref.values()))


def rouge_n(
    candidate: Sequence[str],
    reference: Sequence[str],
    n: int,
    stopwords: frozenset[str] | None = None,
) -> RougeScore:
    """Contiguous n-gram co-occurrence score, n in {1, 2}."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _ngram_units(candidate, n, stopwords)
    ref = _ngram_units(reference, n, stopwords)
    return RougeScore.from_counts(count_matches(cand, ref), sum(cand.values()), sum(ref.values()))
