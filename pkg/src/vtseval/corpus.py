"""Record types and canonical file I/O.

All interchange files are UTF-8 JSON with sorted keys, two-space indent
and a trailing newline; saving a loaded record reproduces the original
bytes. Loading validates every type invariant and raises an error that
names the offending field and index. Writes go to a temporary file that
is renamed into place, so a failed save never leaves a partial file.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class CorpusError(Exception):
    """Base class for data-layer failures."""


class CorpusIOError(CorpusError):
    """The file could not be read or written."""


class CorpusParseError(CorpusError):
    """The file is not valid JSON or lacks the expected structure."""


class CorpusValidationError(CorpusError):
    """The file parsed but violates a record invariant."""


# ---------------------------------------------------------------------------
# record types


@dataclass(frozen=True)
class Subshot:
    index: int
    start_s: float
    end_s: float
    annotation: str


@dataclass(frozen=True)
class VideoRecord:
    video_id: str
    subshot_seconds: float
    subshots: tuple[Subshot, ...]

    def __len__(self) -> int:
        return len(self.subshots)


@dataclass(frozen=True)
class SummarySelection:
    video_id: str
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class GroundTruthSentence:
    temporal_pos: int
    rank: int
    text: str


@dataclass(frozen=True)
class GroundTruthSummary:
    author_id: str
    sentences: tuple[GroundTruthSentence, ...]


@dataclass(frozen=True)
class SubshotFeatures:
    video_id: str
    bins_per_channel: int
    subshots: tuple[np.ndarray, ...] = field(repr=False)
    """One (n_frames, 3*bins_per_channel) float array per subshot."""

    def __len__(self) -> int:
        return len(self.subshots)


# ---------------------------------------------------------------------------
# validation


def validate_video(video: VideoRecord) -> None:
    if len(video.subshots) < 1:
        raise CorpusValidationError("subshots: at least one subshot required")
    if video.subshot_seconds <= 0:
        raise CorpusValidationError("subshot_seconds: must be positive")
    for i, shot in enumerate(video.subshots):
        where = f"subshots[{i}]"
        if shot.index != i:
            raise CorpusValidationError(f"{where}.index: expected {i}, got {shot.index}")
        if not shot.end_s > shot.start_s:
            raise CorpusValidationError(f"{where}.end_s: must exceed start_s ({shot.start_s})")
        if not shot.annotation:
            raise CorpusValidationError(f"{where}.text: annotation must be non-empty")
        if i > 0 and shot.start_s < video.subshots[i - 1].start_s:
            raise CorpusValidationError(f"{where}.start_s: subshots not sorted by start time")


def validate_selection(summary: SummarySelection, video: VideoRecord | None = None) -> None:
    for i, idx in enumerate(summary.indices):
        where = f"indices[{i}]"
        if idx < 0:
            raise CorpusValidationError(f"{where}: negative subshot index {idx}")
        if i > 0 and idx <= summary.indices[i - 1]:
            raise CorpusValidationError(f"{where}: indices must be strictly increasing")
        if video is not None and idx >= len(video):
            raise CorpusValidationError(
                f"{where}: index {idx} out of range for video with {len(video)} subshots"
            )


def validate_ground_truth(gt: GroundTruthSummary) -> None:
    k = len(gt.sentences)
    if k < 1:
        raise CorpusValidationError(f"summaries[{gt.author_id}].sentences: must be non-empty")
    ranks = sorted(s.rank for s in gt.sentences)
    if ranks != list(range(1, k + 1)):
        raise CorpusValidationError(
            f"summaries[{gt.author_id}].sentences: ranks must be a permutation of 1..{k}"
        )
    for i, sent in enumerate(gt.sentences):
        where = f"summaries[{gt.author_id}].sentences[{i}]"
        if i > 0 and sent.temporal_pos <= gt.sentences[i - 1].temporal_pos:
            raise CorpusValidationError(f"{where}.temporal_pos: must be strictly increasing")
        if not sent.text:
            raise CorpusValidationError(f"{where}.text: must be non-empty")


def validate_features(features: SubshotFeatures) -> None:
    dim = 3 * features.bins_per_channel
    if features.bins_per_channel < 1:
        raise CorpusValidationError("bins_per_channel: must be positive")
    if len(features.subshots) < 1:
        raise CorpusValidationError("subshots: at least one subshot required")
    for i, frames in enumerate(features.subshots):
        where = f"subshots[{i}].frames"
        if frames.ndim != 2 or frames.shape[0] < 1:
            raise CorpusValidationError(f"{where}: at least one frame required")
        if frames.shape[1] != dim:
            raise CorpusValidationError(
                f"{where}: histograms must have {dim} bins, got {frames.shape[1]}"
            )
        for j, hist in enumerate(frames):
            if np.any(hist < 0):
                raise CorpusValidationError(f"{where}[{j}]: negative histogram entry")
            if not math.isclose(float(hist.sum()), 1.0, abs_tol=1e-9):
                raise CorpusValidationError(
                    f"{where}[{j}]: histogram sums to {float(hist.sum())!r}, expected 1"
                )


# ---------------------------------------------------------------------------
# canonical JSON plumbing


def canonical_dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def write_canonical(path: str | Path, obj) -> None:
    """Serialize to canonical JSON; write via temp file + rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(canonical_dumps(obj), encoding="utf-8", newline="\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CorpusIOError(f"cannot write {path}: {exc}") from exc


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusIOError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise CorpusParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CorpusParseError(f"{path}: top-level value must be an object")
    return data


def _get(data: dict, key: str, kind, context: str):
    if key not in data:
        raise CorpusParseError(f"{context}: missing field {key!r}")
    value = data[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise CorpusParseError(f"{context}.{key}: expected {kind.__name__}")
    return value


# ---------------------------------------------------------------------------
# annotations


def load_annotations(path: str | Path) -> VideoRecord:
    data = read_json(path)
    ctx = str(path)
    shots = []
    for i, raw in enumerate(_get(data, "subshots", list, ctx)):
        if not isinstance(raw, dict):
            raise CorpusParseError(f"{ctx}: subshots[{i}] must be an object")
        shots.append(
            Subshot(
                index=_get(raw, "index", int, f"{ctx}: subshots[{i}]"),
                start_s=_get(raw, "start_s", float, f"{ctx}: subshots[{i}]"),
                end_s=_get(raw, "end_s", float, f"{ctx}: subshots[{i}]"),
                annotation=_get(raw, "text", str, f"{ctx}: subshots[{i}]"),
            )
        )
    video = VideoRecord(
        video_id=_get(data, "video_id", str, ctx),
        subshot_seconds=_get(data, "subshot_seconds", float, ctx),
        subshots=tuple(shots),
    )
    validate_video(video)
    return video


def save_annotations(path: str | Path, video: VideoRecord) -> None:
    validate_video(video)
    write_canonical(
        path,
        {
            "video_id": video.video_id,
            "subshot_seconds": video.subshot_seconds,
            "subshots": [
                {"index": s.index, "start_s": s.start_s, "end_s": s.end_s, "text": s.annotation}
                for s in video.subshots
            ],
        },
    )


# ---------------------------------------------------------------------------
# ground truths


def load_ground_truths(path: str | Path) -> list[GroundTruthSummary]:
    data = read_json(path)
    ctx = str(path)
    _get(data, "video_id", str, ctx)
    result = []
    for i, raw in enumerate(_get(data, "summaries", list, ctx)):
        if not isinstance(raw, dict):
            raise CorpusParseError(f"{ctx}: summaries[{i}] must be an object")
        sentences = []
        for j, s in enumerate(_get(raw, "sentences", list, f"{ctx}: summaries[{i}]")):
            if not isinstance(s, dict):
                raise CorpusParseError(f"{ctx}: summaries[{i}].sentences[{j}] must be an object")
            where = f"{ctx}: summaries[{i}].sentences[{j}]"
            sentences.append(
                GroundTruthSentence(
                    temporal_pos=_get(s, "temporal_pos", int, where),
                    rank=_get(s, "rank", int, where),
                    text=_get(s, "text", str, where),
                )
            )
        gt = GroundTruthSummary(
            author_id=_get(raw, "author_id", str, f"{ctx}: summaries[{i}]"),
            sentences=tuple(sentences),
        )
        validate_ground_truth(gt)
        result.append(gt)
    if not result:
        raise CorpusValidationError(f"{ctx}: summaries: must contain at least one ground truth")
    return result


def save_ground_truths(path: str | Path, gts: list[GroundTruthSummary], video_id: str) -> None:
    for gt in gts:
        validate_ground_truth(gt)
    write_canonical(
        path,
        {
            "video_id": video_id,
            "summaries": [
                {
                    "author_id": gt.author_id,
                    "sentences": [
                        {"temporal_pos": s.temporal_pos, "rank": s.rank, "text": s.text}
                        for s in gt.sentences
                    ],
                }
                for gt in gts
            ],
        },
    )


# ---------------------------------------------------------------------------
# summaries

_SUMMARY_KEYS = ("indices", "keyframe_times_s", "spans")


def load_summary(path: str | Path, video: VideoRecord | None = None) -> SummarySelection:
    """Load a summary given as indices, keyframe times, or time spans.

    Keyframe and span files need the video record: keyframe times map to
    floor(time / subshot_seconds), spans map to every overlapped subshot.
    """
    data = read_json(path)
    ctx = str(path)
    video_id = _get(data, "video_id", str, ctx)
    present = [k for k in _SUMMARY_KEYS if k in data]
    if len(present) != 1:
        raise CorpusParseError(
            f"{ctx}: exactly one of {', '.join(_SUMMARY_KEYS)} required, found {present or 'none'}"
        )

    if present[0] == "indices":
        raw = _get(data, "indices", list, ctx)
        for i, idx in enumerate(raw):
            if not isinstance(idx, int) or isinstance(idx, bool):
                raise CorpusParseError(f"{ctx}: indices[{i}] must be an integer")
        indices = tuple(raw)
    elif present[0] == "keyframe_times_s":
        if video is None:
            raise CorpusParseError(f"{ctx}: keyframe summaries need the video record to resolve")
        times = _get(data, "keyframe_times_s", list, ctx)
        seen = set()
        for i, t in enumerate(times):
            if not isinstance(t, (int, float)) or isinstance(t, bool):
                raise CorpusParseError(f"{ctx}: keyframe_times_s[{i}] must be a number")
            if t < 0:
                raise CorpusValidationError(f"{ctx}: keyframe_times_s[{i}]: negative time {t}")
            seen.add(int(t // video.subshot_seconds))
        indices = tuple(sorted(seen))
    else:
        if video is None:
            raise CorpusParseError(f"{ctx}: span summaries need the video record to resolve")
        seen = set()
        for i, raw in enumerate(_get(data, "spans", list, ctx)):
            if not isinstance(raw, dict):
                raise CorpusParseError(f"{ctx}: spans[{i}] must be an object")
            start = _get(raw, "start_s", float, f"{ctx}: spans[{i}]")
            end = _get(raw, "end_s", float, f"{ctx}: spans[{i}]")
            if not end > start:
                raise CorpusValidationError(f"{ctx}: spans[{i}].end_s: must exceed start_s")
            for shot in video.subshots:
                if start < shot.end_s and shot.start_s < end:
                    seen.add(shot.index)
        indices = tuple(sorted(seen))

    summary = SummarySelection(video_id=video_id, indices=indices)
    validate_selection(summary, video)
    return summary


def save_summary(path: str | Path, summary: SummarySelection) -> None:
    validate_selection(summary)
    write_canonical(path, {"video_id": summary.video_id, "indices": list(summary.indices)})


# ---------------------------------------------------------------------------
# features


def load_features(path: str | Path) -> SubshotFeatures:
    data = read_json(path)
    ctx = str(path)
    bins = _get(data, "bins_per_channel", int, ctx)
    subshots = []
    for i, raw in enumerate(_get(data, "subshots", list, ctx)):
        if not isinstance(raw, dict):
            raise CorpusParseError(f"{ctx}: subshots[{i}] must be an object")
        if _get(raw, "index", int, f"{ctx}: subshots[{i}]") != i:
            raise CorpusValidationError(f"{ctx}: subshots[{i}].index: expected {i}")
        frames = _get(raw, "frames", list, f"{ctx}: subshots[{i}]")
        try:
            arr = np.asarray(frames, dtype=np.float64)
        except ValueError as exc:
            raise CorpusParseError(f"{ctx}: subshots[{i}].frames: ragged or non-numeric") from exc
        if arr.ndim != 2:
            raise CorpusParseError(f"{ctx}: subshots[{i}].frames: expected a list of histograms")
        subshots.append(arr)
    features = SubshotFeatures(
        video_id=_get(data, "video_id", str, ctx),
        bins_per_channel=bins,
        subshots=tuple(subshots),
    )
    validate_features(features)
    return features


def save_features(path: str | Path, features: SubshotFeatures) -> None:
    validate_features(features)
    write_canonical(
        path,
        {
            "video_id": features.video_id,
            "bins_per_channel": features.bins_per_channel,
            "subshots": [
                {"index": i, "frames": [[float(x) for x in hist] for hist in frames]}
                for i, frames in enumerate(features.subshots)
            ],
        },
    )
