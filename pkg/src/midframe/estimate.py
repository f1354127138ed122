"""Bilateral motion estimation.

The symmetric stage searches a coarse-to-fine pyramid built on the
quarter-resolution input pair, constraining the two fields through
Vt0 = -(t/(1-t)) Vt1 and matching the two warped frames directly.  An
occlusion-aware anchor frame is then synthesised from the symmetric pair,
and each direction is refined independently against its input frame for
two further levels, ending at half resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .image import (
    as_field,
    as_frame,
    as_mask,
    build_pyramid,
    downsample_box,
    resize_bilinear,
    upsample_field,
)
from .metrics import census_features
from .motion import symmetric_counterpart
from .warp import _check_t, backward_warp, warp_mask

COST_KINDS = ("sad", "census")


@dataclass
class SearchParams:
    """Knobs of the block searches; defaults suit full-size video frames."""

    levels: int = 4
    radius: int = 3
    patch: int = 7
    cost: str = "sad"
    refine_levels: int = 2
    beta: float = 20.0
    gamma: float = 20.0
    sigma: float = 1.0
    subpixel: bool = True

    def validate(self):
        if not isinstance(self.levels, int) or self.levels < 1:
            raise ValueError(f"levels must be a positive int, got {self.levels!r}")
        if not isinstance(self.radius, int) or self.radius < 0:
            raise ValueError(f"radius must be a non-negative int, got {self.radius!r}")
        if not isinstance(self.patch, int) or self.patch < 3 or self.patch % 2 == 0:
            raise ValueError(f"patch must be an odd int >= 3, got {self.patch!r}")
        if self.cost not in COST_KINDS:
            raise ValueError(f"cost must be one of {COST_KINDS}, got {self.cost!r}")
        if not isinstance(self.refine_levels, int) or self.refine_levels < 1:
            raise ValueError(f"refine_levels must be a positive int, got {self.refine_levels!r}")
        if not (self.beta > 0.0):
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if not (self.gamma > 0.0):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not (self.sigma > 0.0):
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        return self


@dataclass
class BilateralResult:
    """Everything the estimator produces, all at the input resolution."""

    vs_t0: np.ndarray
    vs_t1: np.ndarray
    va_t0: np.ndarray
    va_t1: np.ndarray
    anchor: np.ndarray
    reliability: np.ndarray
    masks: tuple


def _quarter(frame):
    return downsample_box(downsample_box(frame))


def bilateral_cost(frame0, frame1, x, y, v, t, params=None):
    """Patch cost of candidate vector v (the t->1 direction) at texel (x, y).

    frame0 is sampled at p - (t/(1-t)) v and frame1 at p + v over the
    patch window; SAD averages absolute channel differences per texel,
    census averages soft signature distances.  Clamp border.
    """
    params = (params or SearchParams()).validate()
    t = _check_t(t)
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape[:2] != b.shape[:2]:
        raise ValueError(f"frame dims differ: {a.shape[:2]} vs {b.shape[:2]}")
    vx, vy = float(v[0]), float(v[1])
    if not (np.isfinite(vx) and np.isfinite(vy)):
        raise ValueError("candidate vector must be finite")
    c0 = -(t / (1.0 - t))
    z = np.ones(a.shape[:2], dtype=np.float64)
    if params.cost == "sad":
        return float(_kernels.patch_cost_sad(a, b, int(x), int(y), vx, vy, c0, params.patch, z))
    fa = np.ascontiguousarray(census_features(a))
    fb = np.ascontiguousarray(census_features(b))
    return float(_kernels.patch_cost_census(fa, fb, int(x), int(y), vx, vy, c0, params.patch, z))


def _search_level(a, b, base, z, c0, params):
    out = np.empty_like(base)
    sub = 1 if params.subpixel else 0
    if params.cost == "sad":
        _kernels.search_sad(a, b, base, z, c0, params.radius, params.patch, sub, out)
    else:
        fa = np.ascontiguousarray(census_features(a))
        fb = np.ascontiguousarray(census_features(b))
        _kernels.search_census(fa, fb, base, z, c0, params.radius, params.patch, sub, out)
    return out


def _search_pyramid(a, b, c0, params):
    pa = build_pyramid(a, params.levels)
    pb = build_pyramid(b, params.levels)
    if min(pa[0].shape[0], pa[0].shape[1]) < params.patch:
        raise ValueError(
            f"coarsest level {pa[0].shape[:2]} smaller than the {params.patch}-texel patch"
        )
    field = np.zeros((pa[0].shape[0], pa[0].shape[1], 2), dtype=np.float64)
    for la, lb in zip(pa, pb):
        field = upsample_field(field, la.shape[0], la.shape[1])
        z = np.ones(la.shape[:2], dtype=np.float64)
        field = _search_level(la, lb, field, z, c0, params)
    return field


def estimate_symmetric(frame0, frame1, t, params=None):
    """Symmetric bilateral pair (vs_t0, vs_t1) at quarter resolution.

    Each pixel's candidate offsets are scored with bilateral_cost; ties
    prefer the smallest squared offset, then scan order.  The t->0 partner
    is -(t/(1-t)) times the searched t->1 field, so the pair satisfies the
    linear-trajectory relation exactly.
    """
    params = (params or SearchParams()).validate()
    t = _check_t(t)
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    if min(a.shape[0], a.shape[1]) < 4:
        raise ValueError("frames must be at least 4 texels on a side")
    c0 = -(t / (1.0 - t))
    vs1 = _search_pyramid(_quarter(a), _quarter(b), c0, params)
    return symmetric_counterpart(vs1, t), vs1


def estimate_flow(source, target, params=None):
    """Plain one-sided flow source -> target at quarter resolution.

    Same pyramid search as estimate_symmetric with the source side pinned
    in place; feeds the borrowed/blended motion models.
    """
    params = (params or SearchParams()).validate()
    a = as_frame(source, "source")
    b = as_frame(target, "target")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    if min(a.shape[0], a.shape[1]) < 4:
        raise ValueError("frames must be at least 4 texels on a side")
    return _search_pyramid(_quarter(a), _quarter(b), 0.0, params)


def init_reliability(frame0, frame1, vt0, vt1, beta=20.0):
    """Z = exp(-beta * mean-channel |phi_B(vt0, I0) - phi_B(vt1, I1)|)."""
    if not (beta > 0.0):
        raise ValueError(f"beta must be positive, got {beta!r}")
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    w0 = backward_warp(vt0, a)
    w1 = backward_warp(vt1, b)
    err = np.mean(np.abs(w0 - w1), axis=2)
    return np.exp(-beta * err)


def build_anchor(frame0, frame1, vt0, vt1, t):
    """Occlusion-aware blend of the two warped inputs.

    Weights (1-t)(1 - M1 + M0) and t(1 - M0 + M1) from the warped all-ones
    masks, clamped to [0, 2]; output clamped to [0, 1].  Returns
    (anchor, M0, M1).
    """
    t = _check_t(t)
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    f0 = as_field(vt0, "vt0")
    f1 = as_field(vt1, "vt1")
    if f0.shape[:2] != a.shape[:2] or f1.shape[:2] != a.shape[:2]:
        raise ValueError("fields must match the frame resolution (upsample first)")
    m0 = warp_mask(f0)
    m1 = warp_mask(f1)
    w0 = np.clip((1.0 - t) * ((1.0 - m1) + m0), 0.0, 2.0)
    w1 = np.clip(t * ((1.0 - m0) + m1), 0.0, 2.0)
    wa = backward_warp(f0, a)
    wb = backward_warp(f1, b)
    # algebraically w0*wa + w1*wb, arranged so equal-mask inputs reduce to
    # the plain lerp and identical warps pass through exactly
    anchor = wa + w1[:, :, None] * (wb - wa) + ((w0 + w1) - 1.0)[:, :, None] * wa
    return np.clip(anchor, 0.0, 1.0), m0, m1


def refine_asymmetric(anchor, target, vs_init, z, params=None):
    """Per-direction refinement of a quarter-resolution field.

    Runs the block search between the anchor and the target over
    refine_levels pyramid levels (quarter then half for the default two),
    initialised from vs_init.  The first level weights patch texels by the
    provided z; deeper levels recompute z from the anchor and the target
    warped by the incoming field.  Returns the finest-level field (half
    resolution for the default); callers upsample further.
    """
    params = (params or SearchParams()).validate()
    a = as_frame(anchor, "anchor")
    b = as_frame(target, "target")
    if a.shape != b.shape:
        raise ValueError(f"anchor and target dims differ: {a.shape} vs {b.shape}")
    init = as_field(vs_init, "vs_init")
    zl = as_mask(z, "z")
    r = params.refine_levels
    pa = build_pyramid(a, r + 1)[:r]
    pb = build_pyramid(b, r + 1)[:r]
    if init.shape[0] > pa[0].shape[0] or init.shape[1] > pa[0].shape[1]:
        raise ValueError(
            f"vs_init dims {init.shape[:2]} exceed the coarsest refine level {pa[0].shape[:2]}"
        )
    if zl.shape != init.shape[:2]:
        raise ValueError(f"z dims {zl.shape} do not match vs_init dims {init.shape[:2]}")
    if zl.shape != pa[0].shape[:2]:
        zl = resize_bilinear(zl, pa[0].shape[0], pa[0].shape[1])
    if min(pa[0].shape[0], pa[0].shape[1]) < params.patch:
        raise ValueError(
            f"coarsest refine level {pa[0].shape[:2]} smaller than the {params.patch}-texel patch"
        )
    field = init
    for lvl, (la, lb) in enumerate(zip(pa, pb)):
        field = upsample_field(field, la.shape[0], la.shape[1])
        if lvl > 0:
            zero = np.zeros_like(field)
            zl = init_reliability(la, lb, zero, field, params.beta)
        field = _search_level(la, lb, field, zl, 0.0, params)
    return field


def estimate_abme(frame0, frame1, t, params=None):
    """Full pipeline: symmetric search, anchor, per-direction refinement.

    All returned arrays live at the input resolution; the symmetric pair
    satisfies Vt0 = -(t/(1-t)) Vt1 exactly by construction.
    """
    params = (params or SearchParams()).validate()
    t = _check_t(t)
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    h, w = a.shape[0], a.shape[1]

    vs0_q, vs1_q = estimate_symmetric(a, b, t, params)
    z_q = init_reliability(_quarter(a), _quarter(b), vs0_q, vs1_q, params.beta)

    vs1 = upsample_field(vs1_q, h, w)
    vs0 = symmetric_counterpart(vs1, t)
    anchor, m0, m1 = build_anchor(a, b, vs0, vs1, t)

    va0 = upsample_field(refine_asymmetric(anchor, a, vs0_q, z_q, params), h, w)
    va1 = upsample_field(refine_asymmetric(anchor, b, vs1_q, z_q, params), h, w)

    return BilateralResult(
        vs_t0=vs0,
        vs_t1=vs1,
        va_t0=va0,
        va_t1=va1,
        anchor=anchor,
        reliability=resize_bilinear(z_q, h, w),
        masks=(m0, m1),
    )
