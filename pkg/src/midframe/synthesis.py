"""Candidate fusion: dynamic local filtering over the four warped frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimate import SearchParams, estimate_abme, estimate_flow, estimate_symmetric
from .image import as_frame, as_mask, upsample_field
from .motion import approx_blended, approx_borrowed, symmetric_counterpart
from .warp import _check_t, backward_warp, interp_backward

METHODS = ("approx1", "approx2", "sbmf", "abmf", "full")

_FALLBACK_COEFF = 1.0 / 36.0


@dataclass
class CandidateSet:
    """The four warped frames plus the per-pair discrepancy maps (E_S, E_A)."""

    cands: list
    errors: tuple


def build_candidates(frame0, frame1, result):
    """Warp the inputs by the symmetric and asymmetric field pairs.

    Candidate order: phi_B(vS_t0, I0), phi_B(vS_t1, I1), phi_B(vA_t0, I0),
    phi_B(vA_t1, I1).  Errors are channel-mean absolute differences within
    each pair.
    """
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    c1 = backward_warp(result.vs_t0, a)
    c2 = backward_warp(result.vs_t1, b)
    c3 = backward_warp(result.va_t0, a)
    c4 = backward_warp(result.va_t1, b)
    es = np.mean(np.abs(c1 - c2), axis=2)
    ea = np.mean(np.abs(c3 - c4), axis=2)
    return CandidateSet(cands=[c1, c2, c3, c4], errors=(es, ea))


def make_filters(cands, masks, gamma=20.0, sigma=1.0):
    """Per-pixel 3x3x4 filter bank, returned as an (H, W, 4, 3, 3) array.

    Candidate weights are exp(-gamma * E_pair) times the direction mask
    (M0 for the I0-warped candidates, M1 for the I1-warped ones).  Tap
    weights follow a Gaussian exp(-(i^2+j^2)/(2 sigma^2)) whose off-centre
    taps are additionally scaled by 1 - exp(-gamma (E_S + E_A) / 2), so the
    filters stay pixel-pure wherever the warped candidates already agree.
    Coefficients are normalised to sum 1; a pixel whose total weight falls
    below 1e-12 falls back to uniform 1/36.
    """
    if not (gamma > 0.0):
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    if not (sigma > 0.0):
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    es, ea = cands.errors
    es = as_mask(es, "E_S")
    ea = as_mask(ea, "E_A")
    m0 = as_mask(masks[0], "mask t0")
    m1 = as_mask(masks[1], "mask t1")
    if not (es.shape == ea.shape == m0.shape == m1.shape):
        raise ValueError("error and mask dims differ")
    ws = np.exp(-gamma * es)
    wa = np.exp(-gamma * ea)
    wc = np.stack([ws * m0, ws * m1, wa * m0, wa * m1], axis=-1)

    gy, gx = np.mgrid[-1:2, -1:2].astype(np.float64)
    g = np.exp(-(gx * gx + gy * gy) / (2.0 * sigma * sigma))
    gate = -np.expm1(-gamma * 0.5 * (es + ea))
    taps = g[None, None, :, :] * gate[:, :, None, None]
    taps[:, :, 1, 1] = 1.0

    coeffs = wc[:, :, :, None, None] * taps[:, :, None, :, :]
    total = coeffs.sum(axis=(2, 3, 4))
    degenerate = total < 1e-12
    norm = np.where(degenerate, 1.0, total)
    coeffs /= norm[:, :, None, None, None]
    coeffs[degenerate] = _FALLBACK_COEFF
    return coeffs


def apply_dlc(cands, filters):
    """Dynamic local convolution: out(x, y) = sum_c sum_ij H(i,j,c) cand_c(x+i, y+j).

    Accepts a CandidateSet or a sequence of four frames.  Filters must be
    normalised (sum within 1e-4 of 1 per pixel); taps reach past the frame
    edge with clamp addressing and the result is clamped to [0, 1].
    """
    frames = cands.cands if isinstance(cands, CandidateSet) else list(cands)
    if len(frames) != 4:
        raise ValueError(f"expected 4 candidate frames, got {len(frames)}")
    frames = [as_frame(f, f"candidate {i}") for i, f in enumerate(frames)]
    h, w = frames[0].shape[0], frames[0].shape[1]
    for f in frames[1:]:
        if f.shape != frames[0].shape:
            raise ValueError("candidate dims differ")
    filters = np.asarray(filters, dtype=np.float64)
    if filters.shape != (h, w, 4, 3, 3):
        raise ValueError(f"filters must have shape {(h, w, 4, 3, 3)}, got {filters.shape}")
    total = filters.sum(axis=(2, 3, 4))
    if np.any(np.abs(total - 1.0) > 1e-4):
        raise ValueError("filters are not normalised")
    padded = [np.pad(f, ((1, 1), (1, 1), (0, 0)), mode="edge") for f in frames]
    out = np.zeros_like(frames[0])
    for jy in range(3):
        for ix in range(3):
            views = [p[jy:jy + h, ix:ix + w] for p in padded]
            h01 = filters[:, :, 0, jy, ix, None] * views[0] + filters[:, :, 1, jy, ix, None] * views[1]
            h23 = filters[:, :, 2, jy, ix, None] * views[2] + filters[:, :, 3, jy, ix, None] * views[3]
            out += h01 + h23
    return np.clip(out, 0.0, 1.0)


def compose_residual(filtered, residual=None):
    """Add an optional residual frame, clamping the sum to [0, 1]."""
    base = as_frame(filtered, "filtered")
    if residual is None:
        return base
    res = as_frame(residual, "residual")
    if res.shape != base.shape:
        raise ValueError(f"residual dims {res.shape} do not match {base.shape}")
    return np.clip(base + res, 0.0, 1.0)


def interpolate(frame0, frame1, t, params=None, method="full"):
    """Interpolate the frame at time t with the chosen motion model.

    approx1/approx2 borrow or blend plain frame-to-frame flows, sbmf stops
    at the symmetric fields, abmf at the refined asymmetric ones, and full
    runs the whole pipeline through the dynamic filters.
    """
    params = (params or SearchParams()).validate()
    t = _check_t(t)
    a = as_frame(frame0, "frame0")
    b = as_frame(frame1, "frame1")
    if a.shape != b.shape:
        raise ValueError(f"frame dims differ: {a.shape} vs {b.shape}")
    h, w = a.shape[0], a.shape[1]

    if method == "approx1":
        v01 = upsample_field(estimate_flow(a, b, params), h, w)
        vt0, vt1 = approx_borrowed(v01, np.zeros_like(v01), t, source="from01")
        return interp_backward(a, b, vt0, vt1, t)
    if method == "approx2":
        v01 = upsample_field(estimate_flow(a, b, params), h, w)
        v10 = upsample_field(estimate_flow(b, a, params), h, w)
        vt0, vt1 = approx_blended(v01, v10, t)
        return interp_backward(a, b, vt0, vt1, t)
    if method == "sbmf":
        vs1 = upsample_field(estimate_symmetric(a, b, t, params)[1], h, w)
        vs0 = symmetric_counterpart(vs1, t)
        return interp_backward(a, b, vs0, vs1, t)
    if method == "abmf":
        result = estimate_abme(a, b, t, params)
        return interp_backward(a, b, result.va_t0, result.va_t1, t)
    if method == "full":
        result = estimate_abme(a, b, t, params)
        cands = build_candidates(a, b, result)
        filters = make_filters(cands, result.masks, params.gamma, params.sigma)
        return compose_residual(apply_dlc(cands, filters))
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")
