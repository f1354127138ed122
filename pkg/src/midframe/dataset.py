"""Triplet datasets: PNG codecs and directory loading."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .image import as_frame

log = logging.getLogger(__name__)


@dataclass
class Triplet:
    """Two input frames around a ground-truth middle frame."""

    frame0: np.ndarray
    gt: np.ndarray
    frame1: np.ndarray
    id: str = ""
    t: float = 0.5


def load_png(path):
    """Decode an 8-bit PNG to a float64 RGB frame in [0, 1]."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    return arr / 255.0


def save_png(path, frame):
    """Quantise a float frame to 8-bit RGB, rounding half away from zero."""
    arr = np.clip(as_frame(frame), 0.0, 1.0)
    if arr.shape[2] == 1:
        arr = np.repeat(arr, 3, axis=2)
    if arr.shape[2] != 3:
        raise ValueError(f"expected 1 or 3 channels, got {arr.shape[2]}")
    data = np.floor(arr * 255.0 + 0.5).astype(np.uint8)
    Image.fromarray(data).save(path, format="PNG")


def load_triplet_dir(root):
    """Load every im1/im2/im3.png triplet below root, sorted by subdir name.

    im2.png is the ground truth.  Incomplete or inconsistent triplets are
    skipped with a warning; a missing root raises.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {root}")
    triplets = []
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        paths = [sub / name for name in ("im1.png", "im2.png", "im3.png")]
        missing = [p.name for p in paths if not p.is_file()]
        if missing:
            log.warning("skipping %s: missing %s", sub.name, ", ".join(missing))
            continue
        frame0, gt, frame1 = (load_png(p) for p in paths)
        if not (frame0.shape == gt.shape == frame1.shape):
            log.warning("skipping %s: frame sizes differ", sub.name)
            continue
        triplets.append(Triplet(frame0=frame0, gt=gt, frame1=frame1, id=sub.name))
    if not triplets:
        log.warning("no usable triplets under %s", root)
    return triplets
