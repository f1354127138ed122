"""Frames, motion fields, masks and pyramids.

Conventions used throughout the package:

* frame: float64 array of shape (H, W, C); 2-D input is treated as a single
  channel.  Values are nominally in [0, 1].
* motion field: float64 array of shape (H, W, 2); [..., 0] is dx (rightward),
  [..., 1] is dy (downward), in pixel units of the field's own grid.
* mask: float64 array of shape (H, W).
* pyramid: list of frames ordered coarsest to finest.

Texel centres sit on integer coordinates; (0, 0) is the top-left texel.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

BORDERS = {"clamp": _kernels.BORDER_CLAMP, "zero": _kernels.BORDER_ZERO}


def border_code(border):
    try:
        return BORDERS[border]
    except (KeyError, TypeError):
        raise ValueError(f"border must be 'clamp' or 'zero', got {border!r}") from None


def as_frame(frame, name="frame"):
    """Coerce to a contiguous float64 (H, W, C) array, validating contents."""
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim == 2:
        arr = arr[:, :, None]
    if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] < 1 or arr.shape[2] < 1:
        raise ValueError(f"{name} must be (H, W) or (H, W, C) with positive dims, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def as_field(field, name="field"):
    arr = np.asarray(field, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have shape (H, W, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def as_mask(mask, name="mask"):
    arr = np.asarray(mask, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have shape (H, W), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def sample_bilinear(frame, x, y, border="clamp"):
    """Bilinear sample of every channel at (x, y).

    Clamp replicates edge texels; zero blends against zero outside the grid.
    Returns a (C,) vector (scalar peeling is the caller's business).
    """
    arr = as_frame(frame)
    x = float(x)
    y = float(y)
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError("sample coordinates must be finite")
    out = np.empty(arr.shape[2], dtype=np.float64)
    _kernels.sample_point(arr, x, y, border_code(border), out)
    return out


def downsample_box(frame):
    """One 2x2 box-average reduction; odd edges average the available texels."""
    arr = np.asarray(frame, dtype=np.float64)
    h, w = arr.shape[0], arr.shape[1]
    if h % 2:
        arr = np.concatenate([arr, arr[-1:]], axis=0)
    if w % 2:
        arr = np.concatenate([arr, arr[:, -1:]], axis=1)
    a = arr[0::2, 0::2]
    b = arr[1::2, 0::2]
    c = arr[0::2, 1::2]
    d = arr[1::2, 1::2]
    # pairwise grouping keeps constant inputs exactly constant
    return ((a + b) + (c + d)) * 0.25


def build_pyramid(frame, levels):
    """Box-filtered pyramid with `levels` entries, coarsest first.

    Level dims follow the ceil(n/2) chain; the finest level is the input.
    """
    arr = as_frame(frame)
    if not isinstance(levels, int) or levels < 1:
        raise ValueError(f"levels must be a positive int, got {levels!r}")
    if min(arr.shape[0], arr.shape[1]) < 2 ** (levels - 1):
        raise ValueError(
            f"frame of shape {arr.shape[:2]} too small for {levels} pyramid levels"
        )
    out = [arr.copy()]
    for _ in range(levels - 1):
        out.append(downsample_box(out[-1]))
    out.reverse()
    return out


def resize_bilinear(arr, out_h, out_w):
    """Bilinear resize with box-pyramid-compatible (texel centre) alignment."""
    arr = np.asarray(arr, dtype=np.float64)
    h, w = arr.shape[0], arr.shape[1]
    if out_h < 1 or out_w < 1:
        raise ValueError("target dims must be positive")
    if out_h == h and out_w == w:
        return arr.copy()
    ys = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    xs = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    y0f = np.floor(ys)
    x0f = np.floor(xs)
    fy = ys - y0f
    fx = xs - x0f
    y0 = np.clip(y0f.astype(np.int64), 0, h - 1)
    x0 = np.clip(x0f.astype(np.int64), 0, w - 1)
    y1 = np.clip(y0f.astype(np.int64) + 1, 0, h - 1)
    x1 = np.clip(x0f.astype(np.int64) + 1, 0, w - 1)
    tail = (1,) * (arr.ndim - 2)
    wy = fy.reshape((-1, 1) + tail)
    wx = fx.reshape((1, -1) + tail)
    top = arr[np.ix_(y0, x0)] * (1.0 - wx) + arr[np.ix_(y0, x1)] * wx
    bot = arr[np.ix_(y1, x0)] * (1.0 - wx) + arr[np.ix_(y1, x1)] * wx
    return top * (1.0 - wy) + bot * wy


def upsample_field(field, out_h, out_w):
    """Resize a motion field and rescale its vectors to the target grid.

    Components are multiplied by the per-axis size ratio so displacements
    stay in pixel units of the new grid.  Target dims must not shrink.
    """
    arr = as_field(field)
    h, w = arr.shape[0], arr.shape[1]
    if out_h < h or out_w < w:
        raise ValueError(f"target dims ({out_h}, {out_w}) smaller than field dims ({h}, {w})")
    if out_h == h and out_w == w:
        return arr.copy()
    res = resize_bilinear(arr, out_h, out_w)
    res[:, :, 0] *= out_w / w
    res[:, :, 1] *= out_h / h
    return res
