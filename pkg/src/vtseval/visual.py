"""Frame ingestion, color histograms and chi-square distances.

Frames come in as binary PPM (P6, maxval 255) so no image codec is
needed; precomputed histogram files are the alternative ingestion path
(see corpus.load_features). Histograms are per-channel with B bins each,
concatenated R,G,B and jointly L1-normalized, so the chi-square distance
between two of them lands in [0, 1].
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import CorpusIOError, CorpusParseError, SubshotFeatures, SummarySelection


@dataclass(frozen=True)
class Frame:
    """Raw RGB pixels, 8 bits per sample, row-major, no color conversion."""

    width: int
    height: int
    pixels: bytes


def load_ppm(path: str | Path) -> Frame:
    """Parse a binary PPM (magic P6, maxval 255)."""
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusIOError(f"cannot read {path}: {exc}") from exc

    pos = 0

    def next_token() -> bytes:
        nonlocal pos
        while pos < len(blob):
            if blob[pos : pos + 1].isspace():
                pos += 1
            elif blob[pos : pos + 1] == b"#":
                while pos < len(blob) and blob[pos : pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            else:
                break
        start = pos
        while pos < len(blob) and not blob[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise CorpusParseError(f"{path}: truncated PPM header")
        return blob[start:pos]

    magic = next_token()
    if magic != b"P6":
        raise CorpusParseError(f"{path}: unsupported format {magic!r}, expected binary P6")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError as exc:
        raise CorpusParseError(f"{path}: malformed PPM header") from exc
    if width <= 0 or height <= 0:
        raise CorpusParseError(f"{path}: invalid dimensions {width}x{height}")
    if maxval != 255:
        raise CorpusParseError(f"{path}: unsupported maxval {maxval}, expected 255")
    pos += 1  # single whitespace byte after maxval
    expected = 3 * width * height
    payload = blob[pos : pos + expected]
    if len(payload) < expected:
        raise CorpusParseError(
            f"{path}: truncated payload, expected {expected} bytes, got {len(payload)}"
        )
    return Frame(width=width, height=height, pixels=payload)


def compute_histogram(frame: Frame, bins_per_channel: int) -> np.ndarray:
    """Concatenated per-channel color histogram, jointly L1-normalized.

    Pixel value v goes to bin floor(v * B / 256); B must divide 256 so
    bins are uniform. The 3B-vector sums to exactly 1.
    """
    b = bins_per_channel
    if b < 1 or 256 % b != 0:
        raise ValueError(f"bins_per_channel must divide 256, got {b}")
    if not frame.pixels:
        raise ValueError("cannot compute a histogram of a zero-pixel frame")
    data = np.frombuffer(frame.pixels, dtype=np.uint8).reshape(-1, 3)
    shift = 256 // b
    hist = np.zeros(3 * b, dtype=np.float64)
    for c in range(3):
        counts = np.bincount(data[:, c] // shift, minlength=b)
        hist[c * b : (c + 1) * b] = counts
    return hist / (3 * data.shape[0])


def chi_square(a: np.ndarray, b: np.ndarray) -> float:
    """0.5 * sum (a-b)^2 / (a+b), empty bins contribute 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"histogram length mismatch: {a.shape} vs {b.shape}")
    total = a + b
    diff = a - b
    mask = total > 0
    return 0.5 * float(np.sum(diff[mask] ** 2 / total[mask]))


def subshot_min_distance(a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> float:
    """Minimum chi-square over all cross pairs of two frame lists."""
    if len(a) == 0 or len(b) == 0:
        raise ValueError("subshot frame lists must be non-empty")
    return min(chi_square(x, y) for x in a for y in b)


def pixel_summary_distance(
    summary: SummarySelection,
    gt_subshots: SummarySelection,
    features: SubshotFeatures,
) -> float:
    """Mean over summary subshots of the distance to the nearest ground-truth subshot.

    Lower means more visually similar; rankings built on this metric sort
    ascending.
    """
    if len(summary) == 0:
        raise ValueError("summary selection is empty")
    if len(gt_subshots) == 0:
        raise ValueError("ground-truth selection is empty")
    m = len(features)
    for idx in (*summary.indices, *gt_subshots.indices):
        if idx >= m:
            raise ValueError(f"subshot index {idx} not covered by features ({m} subshots)")
    total = 0.0
    for s in summary.indices:
        total += min(
            subshot_min_distance(features.subshots[s], features.subshots[g])
            for g in gt_subshots.indices
        )
    return total / len(summary)
