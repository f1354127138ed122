"""Bilateral search against a brute-force oracle, anchor and refinement
contracts."""

import dataclasses

import numpy as np
import pytest

from midframe.estimate import (
    BilateralResult,
    SearchParams,
    bilateral_cost,
    build_anchor,
    estimate_abme,
    estimate_flow,
    estimate_symmetric,
    init_reliability,
    refine_asymmetric,
)
from midframe.image import downsample_box, upsample_field
from midframe.warp import backward_warp

TINY = SearchParams(levels=1, radius=2, patch=3, subpixel=False)


def _quarter(frame):
    return downsample_box(downsample_box(frame))


def brute_force_symmetric(q0, q1, t, params):
    """Independent per-pixel argmin over the public bilateral_cost.

    Scans candidates row-major, keeping strictly better (cost, |v|^2)
    pairs, which mirrors the documented tie-break order.
    """
    h, w = q0.shape[0], q0.shape[1]
    field = np.zeros((h, w, 2))
    r = params.radius
    for y in range(h):
        for x in range(w):
            best = None
            for vy in range(-r, r + 1):
                for vx in range(-r, r + 1):
                    cst = bilateral_cost(q0, q1, x, y, (vx, vy), t, params)
                    d2 = float(vx * vx + vy * vy)
                    if best is None or cst < best[0] or (cst == best[0] and d2 < best[1]):
                        best = (cst, d2, vx, vy)
            field[y, x] = (best[2], best[3])
    return field


def test_search_matches_brute_force_oracle():
    t = 0.5
    for seed in range(3):
        rng = np.random.default_rng(seed)
        f0 = rng.random((16, 16, 3))
        f1 = rng.random((16, 16, 3))
        got = estimate_symmetric(f0, f1, t, TINY)[1]
        want = brute_force_symmetric(_quarter(f0), _quarter(f1), t, TINY)
        assert np.array_equal(got, want), f"seed {seed} diverged from oracle"


def test_search_oracle_on_structured_scene():
    # a moving bright block, which has real (non-tie) minima
    f0 = np.full((16, 16, 1), 0.2)
    f1 = np.full((16, 16, 1), 0.2)
    f0[4:8, 4:8] = 1.0
    f1[8:12, 8:12] = 1.0
    got = estimate_symmetric(f0, f1, 0.5, TINY)[1]
    want = brute_force_symmetric(_quarter(f0), _quarter(f1), 0.5, TINY)
    assert np.array_equal(got, want)


def test_bilateral_cost_identical_frames_zero():
    rng = np.random.default_rng(1)
    img = rng.random((8, 8, 3))
    assert bilateral_cost(img, img, 4, 4, (0, 0), 0.5, TINY) == 0.0


def test_bilateral_cost_constant_gap_is_one():
    a = np.zeros((8, 8, 1))
    b = np.ones((8, 8, 1))
    for v in ((0, 0), (1, -2), (2, 2)):
        assert bilateral_cost(a, b, 4, 4, v, 0.5, TINY) == pytest.approx(1.0, abs=1e-12)


def test_bilateral_cost_prefers_true_offset():
    # 3x3 bright square at (2,2) in frame0 and (4,4) in frame1; from the
    # midpoint pixel, v=(1,1) aligns both patches and must beat v=(0,0)
    a = np.zeros((9, 9, 1))
    b = np.zeros((9, 9, 1))
    a[2:5, 2:5] = 1.0
    b[4:7, 4:7] = 1.0
    good = bilateral_cost(a, b, 3, 3, (1, 1), 0.5, TINY)
    bad = bilateral_cost(a, b, 3, 3, (0, 0), 0.5, TINY)
    assert good < bad


def test_params_validation():
    bad = [
        dict(levels=0),
        dict(radius=-1),
        dict(patch=4),
        dict(patch=1),
        dict(cost="ncc"),
        dict(refine_levels=0),
        dict(beta=0.0),
        dict(gamma=-1.0),
        dict(sigma=0.0),
    ]
    for kw in bad:
        with pytest.raises(ValueError):
            dataclasses.replace(SearchParams(), **kw).validate()
    SearchParams().validate()


def test_symmetric_pair_relation_is_exact():
    rng = np.random.default_rng(2)
    f0 = rng.random((32, 32, 3))
    f1 = rng.random((32, 32, 3))
    p = SearchParams(levels=2, radius=2, patch=3)
    for t in (0.25, 0.5, 0.75):
        v0, v1 = estimate_symmetric(f0, f1, t, p)
        assert np.max(np.abs(v0 + (t / (1.0 - t)) * v1)) <= 1e-12


def test_symmetric_static_scene_is_zero():
    rng = np.random.default_rng(3)
    img = rng.random((32, 32, 3))
    v0, v1 = estimate_symmetric(img, img, 0.5, SearchParams(levels=2, radius=3, patch=3))
    assert np.max(np.abs(v1)) <= 0.25
    assert np.max(np.abs(v0)) <= 0.25


def test_symmetric_recovers_global_shift():
    # content moves +8 px in x; at t=0.5 the t->1 field is (4, 0).  The
    # shift is 4-aligned, so the quarter images correspond texel for texel
    # and the interior match cost is exactly zero.
    rng = np.random.default_rng(4)
    wide = rng.random((48, 72, 1))
    f0 = wide[:, 8:56]
    f1 = wide[:, 0:48]
    v1 = estimate_symmetric(f0, f1, 0.5, SearchParams(levels=1, radius=3, patch=3))[1]
    up = upsample_field(v1, 48, 48)
    # columns whose matches (plus patch reach) stay inside both frames
    inner = up[:, 12:32]
    assert np.all(np.abs(inner[:, :, 0] - 4.0) <= 0.5)
    assert np.all(np.abs(inner[:, :, 1]) <= 0.5)


def test_estimate_flow_recovers_shift():
    rng = np.random.default_rng(5)
    wide = rng.random((48, 72, 1))
    f0 = wide[:, 8:56]
    f1 = wide[:, 0:48]
    v01 = estimate_flow(f0, f1, SearchParams(levels=1, radius=3, patch=3))
    up = upsample_field(v01, 48, 48)
    # columns whose matches (plus patch reach) stay inside both frames
    inner = up[:, 12:32]
    assert np.all(np.abs(inner[:, :, 0] - 8.0) <= 0.5)
    assert np.all(np.abs(inner[:, :, 1]) <= 0.5)


def test_init_reliability_analytic_values():
    rng = np.random.default_rng(6)
    img = rng.random((8, 8, 3)) * 0.8
    zero = np.zeros((8, 8, 2))
    assert np.allclose(init_reliability(img, img, zero, zero), 1.0, atol=1e-12)
    for gap, expect in ((0.05, np.exp(-1.0)), (0.1, np.exp(-2.0))):
        z = init_reliability(img, img + gap, zero, zero, beta=20.0)
        assert np.allclose(z, expect, atol=1e-9)


def test_build_anchor_equal_masks_reduces_to_blend():
    rng = np.random.default_rng(7)
    a = rng.random((12, 12, 3))
    b = rng.random((12, 12, 3))
    zero = np.zeros((12, 12, 2))
    for t in (0.25, 0.5, 0.75):
        anchor, m0, m1 = build_anchor(a, b, zero, zero, t)
        assert np.array_equal(m0, m1)
        blend = a + t * (b - a)
        assert np.max(np.abs(anchor - blend)) <= 1e-9


def test_build_anchor_one_sided_mask():
    # push every frame-1 sample far outside: M1 = 0, M0 = 1, so the anchor
    # must take the frame-0 warp exclusively at t = 0.5
    rng = np.random.default_rng(8)
    a = rng.random((6, 6, 1))
    b = rng.random((6, 6, 1))
    v0 = np.zeros((6, 6, 2))
    v1 = np.full((6, 6, 2), 50.0)
    anchor, m0, m1 = build_anchor(a, b, v0, v1, 0.5)
    assert np.array_equal(m0, np.ones((6, 6)))
    assert np.array_equal(m1, np.zeros((6, 6)))
    assert np.max(np.abs(anchor - a)) <= 1e-12


def test_build_anchor_identity_fixed_point():
    rng = np.random.default_rng(9)
    img = rng.random((8, 8, 2))
    zero = np.zeros((8, 8, 2))
    anchor, _, _ = build_anchor(img, img, zero, zero, 0.5)
    assert np.array_equal(anchor, img)


def test_refine_noop_bound():
    # radius 0 with unit reliability must return the init, upsampled
    rng = np.random.default_rng(10)
    anchor = rng.random((32, 32, 3))
    target = rng.random((32, 32, 3))
    init = rng.normal(size=(8, 8, 2))
    z = np.ones((8, 8))
    p = SearchParams(levels=1, radius=0, patch=3, subpixel=True)
    out = refine_asymmetric(anchor, target, init, z, p)
    assert np.array_equal(out, upsample_field(init, 16, 16))


def test_refine_finds_known_shift():
    # target is the anchor shifted +4 px in x (edge clamped), so the
    # refined field should settle near (2, 0) in half-resolution units
    rng = np.random.default_rng(11)
    base = rng.random((8, 8, 1))
    from midframe.image import resize_bilinear

    anchor = resize_bilinear(base, 32, 32)
    idx = np.clip(np.arange(32) - 4, 0, 31)
    target = anchor[:, idx]
    init = np.zeros((8, 8, 2))
    z = np.ones((8, 8))
    p = SearchParams(levels=1, radius=1, patch=3)
    out = refine_asymmetric(anchor, target, init, z, p)
    assert out.shape == (16, 16, 2)
    inner = out[3:-3, 4:-4]
    assert np.all(np.abs(inner[:, :, 0] - 2.0) <= 0.5)
    assert np.all(np.abs(inner[:, :, 1]) <= 0.5)


def test_refine_validates_dims():
    anchor = np.zeros((16, 16, 1))
    target = np.zeros((16, 16, 1))
    p = SearchParams(levels=1, radius=1, patch=3)
    with pytest.raises(ValueError):
        refine_asymmetric(anchor, target, np.zeros((9, 9, 2)), np.ones((9, 9)), p)
    with pytest.raises(ValueError):
        refine_asymmetric(anchor, target, np.zeros((4, 4, 2)), np.ones((3, 3)), p)


def test_estimate_abme_static_scene():
    rng = np.random.default_rng(12)
    img = rng.random((32, 32, 3))
    p = SearchParams(levels=2, radius=2, patch=3)
    res = estimate_abme(img, img, 0.5, p)
    assert isinstance(res, BilateralResult)
    for field in (res.vs_t0, res.vs_t1, res.va_t0, res.va_t1):
        assert field.shape == (32, 32, 2)
        assert np.max(np.abs(field)) <= 0.25
    assert np.array_equal(res.anchor, img)
    assert np.allclose(res.reliability, 1.0, atol=1e-12)
    assert np.array_equal(res.masks[0], np.ones((32, 32)))
    assert np.array_equal(res.masks[1], np.ones((32, 32)))


def test_estimate_abme_pair_relation_and_backward_warp():
    rng = np.random.default_rng(13)
    f0 = rng.random((32, 32, 3))
    f1 = rng.random((32, 32, 3))
    p = SearchParams(levels=2, radius=2, patch=3)
    for t in (0.25, 0.5, 0.75):
        res = estimate_abme(f0, f1, t, p)
        assert np.max(np.abs(res.vs_t0 + (t / (1.0 - t)) * res.vs_t1)) <= 1e-12
        # refined fields are usable for warping at full resolution
        w0 = backward_warp(res.va_t0, f0)
        w1 = backward_warp(res.va_t1, f1)
        assert w0.shape == f0.shape and w1.shape == f1.shape


def test_census_cost_search_runs():
    rng = np.random.default_rng(14)
    f0 = rng.random((16, 16, 3))
    f1 = rng.random((16, 16, 3))
    p = SearchParams(levels=1, radius=1, patch=3, cost="census")
    v0, v1 = estimate_symmetric(f0, f1, 0.5, p)
    assert v1.shape == (4, 4, 2)
    assert np.all(np.isfinite(v1))
