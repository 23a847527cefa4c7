"""Baseline summarizers. Each returns exactly n subshot indices, ascending.

All tie-breaks are lowest-index and all randomness flows through the
pinned splitmix64 generator, so identical inputs and seed give identical
summaries. Frame-based methods (clustering, marginal-relevance) operate
on the flattened frame list of a feature table; text-based methods
(greedy bag-of-words, ordered sentence assignment) consume a ranked
ground truth that is length-adjusted to n before use.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import GroundTruthSummary, SubshotFeatures, SummarySelection, VideoRecord
from .evaluator import length_adjust
from .rng import SplitMix64
from .rouge import rouge_su
from .textproc import preprocess
from .visual import chi_square


@dataclass(frozen=True)
class MmrParams:
    lambda_: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lambda_}")
        if self.n < 1:
            raise ValueError(f"target subshot count must be >= 1, got {self.n}")


def uniform_indices(m: int, n: int) -> list[int]:
    """floor(i*m/n) for i in 0..n-1; strictly increasing when n <= m."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    return [i * m // n for i in range(n)]


def uniform_sample(video: VideoRecord, n: int) -> SummarySelection:
    """n subshots uniformly spaced over the video."""
    return SummarySelection(video_id=video.video_id, indices=tuple(uniform_indices(len(video), n)))


# ---------------------------------------------------------------------------
# frame helpers


def _flatten_frames(features: SubshotFeatures) -> tuple[np.ndarray, list[int]]:
    """All frames stacked, plus each frame's owning subshot index."""
    owners = []
    for subshot, frames in enumerate(features.subshots):
        owners.extend([subshot] * frames.shape[0])
    return np.vstack(features.subshots), owners


def _chi_square_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise chi-square distances, shape (len(a), len(b))."""
    num = (a[:, None, :] - b[None, :, :]) ** 2
    den = a[:, None, :] + b[None, :, :]
    frac = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return 0.5 * frac.sum(axis=-1)


def _fill_uniform(chosen: set[int], m: int, n: int) -> list[int]:
    """Top up a partial selection with uniformly spaced unchosen subshots."""
    missing = n - len(chosen)
    if missing > 0:
        pool = sorted(set(range(m)) - chosen)
        chosen = chosen | {pool[p] for p in uniform_indices(len(pool), missing)}
    return sorted(chosen)


# ---------------------------------------------------------------------------
# color-histogram clustering


@dataclass(frozen=True)
class ClusterResult:
    assignments: list[int]
    centroids: np.ndarray
    objectives: list[float]
    """Total assigned chi-square distance after each assignment pass."""


def lloyd_cluster(frames: np.ndarray, n: int, seed: int, max_iter: int = 100) -> ClusterResult:
    """Lloyd clustering with chi-square assignment and mean centroids.

    Initialization is k-means++ style: the first center is a uniformly
    drawn frame, later centers are drawn with probability proportional to
    the squared chi-square distance to the nearest chosen center. A
    cluster that comes out of an assignment pass empty is reseeded to the
    frame currently farthest from its own centroid.
    """
    f = frames.shape[0]
    if f < n:
        raise ValueError(f"cannot form {n} clusters from {f} frames")
    rng = SplitMix64(seed)

    centers = [rng.next_below(f)]
    while len(centers) < n:
        d2 = np.min(_chi_square_matrix(frames, frames[centers]), axis=1) ** 2
        total = float(d2.sum())
        if total > 0.0:
            r = rng.next_float() * total
            idx = min(int(np.searchsorted(np.cumsum(d2), r, side="right")), f - 1)
        else:
            idx = min(i for i in range(f) if i not in centers)
        centers.append(idx)
    centroids = frames[centers].copy()

    def assign(cents: np.ndarray) -> tuple[list[int], list[float]]:
        dists = _chi_square_matrix(frames, cents)
        labels = [int(i) for i in np.argmin(dists, axis=1)]
        per_frame = [float(dists[i, labels[i]]) for i in range(f)]
        for c in range(n):
            if c not in labels:
                far = max(range(f), key=lambda i: (per_frame[i], -i))
                cents[c] = frames[far]
                labels[far] = c
                per_frame[far] = 0.0
        return labels, per_frame

    assignments, per_frame = assign(centroids)
    objectives = [sum(per_frame)]
    for _ in range(max_iter):
        for c in range(n):
            members = [i for i in range(f) if assignments[i] == c]
            if members:  # reseeding may have stolen a singleton's frame
                centroids[c] = frames[members].mean(axis=0)
        new_assignments, per_frame = assign(centroids)
        objectives.append(sum(per_frame))
        if new_assignments == assignments:
            break
        assignments = new_assignments
    return ClusterResult(assignments=assignments, centroids=centroids, objectives=objectives)


def histogram_cluster(features: SubshotFeatures, n: int, seed: int) -> SummarySelection:
    """Cluster all frames into n groups; pick the subshot of each group's medoid.

    If two clusters land in one subshot the next-nearest member frame in a
    not-yet-chosen subshot is used; clusters that cannot contribute are
    made up for with uniformly spaced unchosen subshots.
    """
    hists, owners = _flatten_frames(features)
    m = len(features)
    if n > m:
        raise ValueError(f"cannot select {n} distinct subshots from {m}")
    if hists.shape[0] < n:
        raise ValueError(f"fewer frames ({hists.shape[0]}) than clusters ({n})")
    result = lloyd_cluster(hists, n, seed)

    chosen: set[int] = set()
    for c in range(n):
        members = [i for i in range(len(owners)) if result.assignments[i] == c]
        if not members:
            continue
        dists = _chi_square_matrix(hists[members], result.centroids[c : c + 1])[:, 0]
        for pos in sorted(range(len(members)), key=lambda p: (dists[p], members[p])):
            subshot = owners[members[pos]]
            if subshot not in chosen:
                chosen.add(subshot)
                break
    indices = _fill_uniform(chosen, m, n)
    return SummarySelection(video_id=features.video_id, indices=tuple(indices))


# ---------------------------------------------------------------------------
# marginal-relevance keyframe selection


def mmr_keyframes(features: SubshotFeatures, params: MmrParams) -> list[int]:
    """Greedy keyframe picks (flattened frame indices) in selection order.

    Each step minimizes
        lambda * mean chi-square to the other unselected frames
        - (1 - lambda) * min chi-square to the already selected frames,
    with the second term omitted on the first pick and ties going to the
    lowest frame index. Selection continues until the picked keyframes
    cover params.n distinct subshots.
    """
    hists, owners = _flatten_frames(features)
    f = hists.shape[0]
    m = len(features)
    if params.n > m:
        raise ValueError(f"cannot reach {params.n} distinct subshots from {m}")
    # plain-float rows and left-fold sums so identical frames score
    # identically and ties resolve by index, bit-for-bit
    dist = _chi_square_matrix(hists, hists).tolist()

    selected: list[int] = []
    remaining = list(range(f))
    covered: set[int] = set()
    while len(covered) < params.n:
        if not remaining:
            raise ValueError(f"ran out of frames before reaching {params.n} distinct subshots")
        best_idx = None
        best_score = None
        for cand in remaining:
            others = [o for o in remaining if o != cand]
            mean_d = sum(dist[cand][o] for o in others) / len(others) if others else 0.0
            score = params.lambda_ * mean_d
            if selected:
                score -= (1.0 - params.lambda_) * min(dist[cand][s] for s in selected)
            if best_score is None or score < best_score:
                best_score = score
                best_idx = cand
        selected.append(best_idx)
        remaining.remove(best_idx)
        covered.add(owners[best_idx])
    return selected


def video_mmr(features: SubshotFeatures, params: MmrParams) -> SummarySelection:
    """Subshots containing the marginal-relevance keyframes."""
    _, owners = _flatten_frames(features)
    keyframes = mmr_keyframes(features, params)
    indices = tuple(sorted({owners[k] for k in keyframes}))
    return SummarySelection(video_id=features.video_id, indices=indices)


# ---------------------------------------------------------------------------
# greedy bag-of-words


def greedy_bow(
    video: VideoRecord,
    gt: GroundTruthSummary,
    n: int,
    stopwords: frozenset[str] | None = None,
) -> SummarySelection:
    """Greedy covering of the length-adjusted ground-truth word bag.

    Each step takes the subshot whose annotation covers the most remaining
    bag words (count-clipped); covered words leave the bag. Once no
    subshot gains anything, leftover slots are filled uniformly.
    """
    m = len(video)
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= M, got n={n}, M={m}")
    bag: Counter = Counter()
    for sentence in length_adjust(gt, n):
        bag.update(preprocess(sentence, stopwords))
    ann_units = [Counter(preprocess(s.annotation, stopwords)) for s in video.subshots]

    chosen: set[int] = set()
    for _ in range(n):
        best_idx = None
        best_gain = 0
        for i in range(m):
            if i in chosen:
                continue
            gain = sum((ann_units[i] & bag).values())
            if gain > best_gain:
                best_gain = gain
                best_idx = i
        if best_idx is None:
            break
        chosen.add(best_idx)
        bag -= ann_units[best_idx]
    indices = _fill_uniform(chosen, m, n)
    return SummarySelection(video_id=video.video_id, indices=tuple(indices))


# ---------------------------------------------------------------------------
# ordered sentence assignment


def sentence_dp(
    video: VideoRecord,
    gt: GroundTruthSummary,
    n: int,
    stopwords: frozenset[str] | None = None,
) -> SummarySelection:
    """One subshot per ground-truth sentence, kept in sentence order.

    Maximizes the total sentence/annotation similarity (summary-level
    co-occurrence F) over strictly increasing subshot indices via dynamic
    programming with suffix-max acceleration; among optimal assignments
    the lexicographically smallest is returned. If the ground truth has
    fewer than n sentences the remainder is filled uniformly.
    """
    m = len(video)
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= M, got n={n}, M={m}")
    sentences = length_adjust(gt, n)
    k = len(sentences)
    sim = [
        [
            rouge_su([sentences[j]], [video.subshots[i].annotation], stopwords).f_measure
            for i in range(m)
        ]
        for j in range(k)
    ]

    # best[j][i]: best right-folded total for sentences j.. using subshot
    # indices >= i
    neg_inf = float("-inf")
    best = [[neg_inf] * (m + 1) for _ in range(k + 1)]
    best[k] = [0.0] * (m + 1)
    for j in range(k - 1, -1, -1):
        for i in range(m - 1, -1, -1):
            take = sim[j][i] + best[j + 1][i + 1]
            best[j][i] = max(best[j][i + 1], take)

    # Lexicographically smallest optimum. Candidate index i is feasible at
    # row j iff the full fold through the already-chosen prefix hits the
    # optimum; rounding can merge distinct suffix totals after the prefix
    # additions, so the suffix value alone cannot decide ties. Float
    # addition is monotone, which makes testing with the suffix maximum
    # sufficient.
    target = best[0][0]
    chosen: list[int] = []
    prefix: list[float] = []
    i = 0
    for j in range(k):
        while True:
            total = sim[j][i] + best[j + 1][i + 1]
            for v in reversed(prefix):
                total = v + total
            if total == target:
                break
            i += 1
        chosen.append(i)
        prefix.append(sim[j][i])
        i += 1
    indices = _fill_uniform(set(chosen), m, n)
    return SummarySelection(video_id=video.video_id, indices=tuple(indices))
