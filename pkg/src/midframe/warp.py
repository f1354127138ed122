"""Backward warping, forward splatting and the two plain blend interpolators."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .image import as_field, as_frame, as_mask, border_code


def _check_t(t):
    t = float(t)
    if not (0.0 < t < 1.0):
        raise ValueError(f"t must lie strictly between 0 and 1, got {t}")
    return t


def backward_warp(field, frame, border="clamp"):
    """Gather warp: out(x) = frame(x + field(x)), bilinear.

    Output shape matches `frame`; 2-D input comes back 2-D.
    """
    arr = as_frame(frame)
    fld = as_field(field)
    if fld.shape[:2] != arr.shape[:2]:
        raise ValueError(f"field dims {fld.shape[:2]} do not match frame dims {arr.shape[:2]}")
    out = np.empty_like(arr)
    _kernels.backward_warp_k(fld, arr, border_code(border), out)
    if np.ndim(frame) == 2:
        return out[:, :, 0]
    return out


def forward_splat(field, frame, mode="average", weight=None):
    """Scatter warp with bilinear splatting.

    Returns (frame, mask) where mask is the accumulated splat weight per
    target texel (0 marks a hole; collisions can push it above 1).  Average
    mode normalises by that weight; softmax mode additionally scales every
    source texel's contribution by exp(weight).
    """
    arr = as_frame(frame)
    fld = as_field(field)
    if fld.shape[:2] != arr.shape[:2]:
        raise ValueError(f"field dims {fld.shape[:2]} do not match frame dims {arr.shape[:2]}")
    if mode == "average":
        if weight is not None:
            raise ValueError("weight is only meaningful for softmax mode")
        scale = np.ones(arr.shape[:2], dtype=np.float64)
    elif mode == "softmax":
        if weight is None:
            raise ValueError("softmax mode needs a weight mask")
        w = as_mask(weight, "weight")
        if w.shape != arr.shape[:2]:
            raise ValueError(f"weight dims {w.shape} do not match frame dims {arr.shape[:2]}")
        scale = np.exp(w)
    else:
        raise ValueError(f"mode must be 'average' or 'softmax', got {mode!r}")
    acc = np.zeros_like(arr)
    wacc = np.zeros(arr.shape[:2], dtype=np.float64)
    _kernels.forward_splat_k(fld, arr, scale, acc, wacc)
    covered = wacc > 0.0
    out = np.zeros_like(arr)
    np.divide(acc, wacc[:, :, None], out=out, where=covered[:, :, None])
    if np.ndim(frame) == 2:
        return out[:, :, 0], wacc
    return out, wacc


def warp_mask(field):
    """Backward-warp an all-ones frame with a zero border.

    Texels whose warped footprint falls fully inside the grid read 1;
    out-of-frame lookups fade toward 0.
    """
    fld = as_field(field)
    ones = np.ones((fld.shape[0], fld.shape[1], 1), dtype=np.float64)
    out = np.empty_like(ones)
    _kernels.backward_warp_k(fld, ones, _kernels.BORDER_ZERO, out)
    return out[:, :, 0]


def interp_forward(frame0, frame1, v01, v10, t):
    """Blend of forward-splatted inputs: (1-t) phi_F(I0, t V01) + t phi_F(I1, (1-t) V10).

    Average splats; a texel not reached by one side's splat falls back to
    that side's unwarped input, so double holes get the plain (1-t)/t blend.
    """
    t = _check_t(t)
    a0 = as_frame(frame0, "frame0")
    a1 = as_frame(frame1, "frame1")
    if a0.shape != a1.shape:
        raise ValueError(f"frame dims differ: {a0.shape} vs {a1.shape}")
    f01 = as_field(v01, "v01")
    f10 = as_field(v10, "v10")
    w0, m0 = forward_splat(f01 * t, a0)
    w1, m1 = forward_splat(f10 * (1.0 - t), a1)
    w0 = np.where(m0[:, :, None] > 0.0, w0, a0)
    w1 = np.where(m1[:, :, None] > 0.0, w1, a1)
    out = w0 + t * (w1 - w0)
    if np.ndim(frame0) == 2:
        return out[:, :, 0]
    return out


def interp_backward(frame0, frame1, vt0, vt1, t):
    """Blend of backward-warped inputs: (1-t) phi_B(Vt0, I0) + t phi_B(Vt1, I1).

    Clamp border.  Written as a lerp so identical warped frames pass
    through bit-exactly.
    """
    t = _check_t(t)
    a0 = as_frame(frame0, "frame0")
    a1 = as_frame(frame1, "frame1")
    if a0.shape != a1.shape:
        raise ValueError(f"frame dims differ: {a0.shape} vs {a1.shape}")
    w0 = backward_warp(vt0, a0, border="clamp")
    w1 = backward_warp(vt1, a1, border="clamp")
    out = w0 + t * (w1 - w0)
    if np.ndim(frame0) == 2:
        return out[:, :, 0]
    return out
