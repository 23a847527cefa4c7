#!/usr/bin/env python3
"""Regenerate the committed test fixtures under tests/data/.

The synthetic 12-subshot video is constructed so that the ground-truth
driven summarizers (greedy bag-of-words, ordered sentence assignment)
beat the uniform baseline under the best-reference score; that property
is verified here with the naive oracle before anything is written.

Run from the repository root:  python tools/make_fixtures.py
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from vtseval import corpus, summarize
from vtseval.analysis import sample_summary_pairs
from vtseval.evaluator import length_adjust, text_representation
from vtseval.rng import SplitMix64
from vtseval.textproc import preprocess

import oracles

DATA = ROOT / "tests" / "data"

ANNOTATIONS = [
    "I drank coffee in the kitchen.",
    "I washed the dishes in the sink.",
    "I walked my dog at the park.",
    "I played fetch with the dog on the grass.",
    "I drove the car to the market.",
    "I bought apples at the market.",
    "I paid the cashier for the apples.",
    "I cooked pasta on the stove.",
    "I ate lunch at the table.",
    "I read a book on the sofa.",
    "I watched a movie on the couch.",
    "I slept in the bedroom.",
]

# (temporal_pos, rank, text) per author, temporal order
GT_A = [
    (0, 6, "I drank coffee in the kitchen."),
    (2, 1, "I walked my dog at the park."),
    (5, 2, "I bought apples at the market."),
    (7, 3, "I cooked pasta on the stove."),
    (8, 4, "I ate lunch at the table."),
    (9, 5, "I read a book on the sofa."),
]
GT_B = [
    (1, 5, "I washed the dishes in the sink."),
    (3, 2, "I played fetch with the dog on the grass."),
    (4, 4, "I drove the car to the market."),
    (7, 1, "I cooked pasta on the stove."),
    (10, 3, "I watched a movie on the couch."),
    (11, 6, "I slept in the bedroom."),
]

# dominant (r, g, b) bin per visual group of three subshots
GROUP_BINS = [(15, 2, 2), (2, 15, 2), (2, 2, 15), (8, 8, 8)]
BINS = 16
FRAMES_PER_SUBSHOT = 2


def build_video() -> corpus.VideoRecord:
    return corpus.VideoRecord(
        video_id="video12",
        subshot_seconds=5.0,
        subshots=tuple(
            corpus.Subshot(index=i, start_s=5.0 * i, end_s=5.0 * (i + 1), annotation=text)
            for i, text in enumerate(ANNOTATIONS)
        ),
    )


def build_gts() -> list[corpus.GroundTruthSummary]:
    return [
        corpus.GroundTruthSummary(
            author_id=author,
            sentences=tuple(
                corpus.GroundTruthSentence(temporal_pos=p, rank=r, text=t)
                for p, r, t in rows
            ),
        )
        for author, rows in (("gt_a", GT_A), ("gt_b", GT_B))
    ]


def build_features() -> corpus.SubshotFeatures:
    rng = SplitMix64(42)
    subshots = []
    for subshot in range(len(ANNOTATIONS)):
        group = GROUP_BINS[subshot // 3]
        frames = []
        for _ in range(FRAMES_PER_SUBSHOT):
            raw = np.zeros(3 * BINS)
            for channel, base in enumerate(group):
                raw[channel * BINS + base] = 6.0
                raw[channel * BINS + (base + 1) % BINS] = 1.0 + 0.5 * rng.next_float()
            frames.append(raw / raw.sum())
        subshots.append(np.vstack(frames))
    return corpus.SubshotFeatures(
        video_id="video12", bins_per_channel=BINS, subshots=tuple(subshots)
    )


def verify_fixture(video, gts) -> None:
    """Oracle check: bow and dp beat uniform at n=4 under the best-reference score."""
    n = 4
    prep = preprocess
    references = [length_adjust(gt, n) for gt in gts]

    def oracle_score(selection) -> float:
        return oracles.naive_best_reference_score(
            text_representation(selection, video), references, prep
        )

    uniform = oracle_score(summarize.uniform_sample(video, n))
    bow = oracle_score(summarize.greedy_bow(video, gts[0], n))
    dp = oracle_score(summarize.sentence_dp(video, gts[0], n))
    print(f"oracle scores: uniform={uniform:.4f} bow={bow:.4f} dp={dp:.4f}")
    if not (bow > uniform and dp > uniform):
        raise SystemExit("fixture property violated: bow/dp must beat uniform")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    video = build_video()
    gts = build_gts()
    features = build_features()
    verify_fixture(video, gts)

    corpus.save_annotations(DATA / "video12.annotations.json", video)
    corpus.save_ground_truths(DATA / "video12.gts.json", gts, video.video_id)
    corpus.save_features(DATA / "video12.features.json", features)
    corpus.save_summary(
        DATA / "video12.summary_a.json",
        corpus.SummarySelection(video_id="video12", indices=(2, 5, 7, 8)),
    )

    pairs = sample_summary_pairs(m=600, n=24, count=100, seed=0)
    corpus.write_canonical(
        DATA / "golden_pairs_seed0.json",
        {
            "m": 600,
            "n": 24,
            "count": 100,
            "seed": 0,
            "pairs": [{"a": list(a.indices), "b": list(b.indices)} for a, b in pairs],
        },
    )
    print(f"fixtures written to {DATA}")


if __name__ == "__main__":
    main()
