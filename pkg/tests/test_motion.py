"""Closed-form intermediate-motion models and the symmetric constraint."""

import numpy as np
import pytest

from midframe.motion import (
    approx_blended,
    approx_borrowed,
    scale_field,
    symmetric_counterpart,
)


def _const_field(vx, vy, shape=(2, 3)):
    f = np.zeros(shape + (2,), dtype=np.float64)
    f[:, :, 0] = vx
    f[:, :, 1] = vy
    return f


def test_scale_field():
    f = _const_field(4.0, -2.0)
    out = scale_field(f, 0.25)
    assert np.array_equal(out[0, 0], [1.0, -0.5])


def test_borrowed_from01_quarter_t():
    # V01 = (4, 0), t = 0.25: Vt0 = -t V01 = (-1, 0), Vt1 = (1-t) V01 = (3, 0)
    v01 = _const_field(4.0, 0.0)
    vt0, vt1 = approx_borrowed(v01, np.zeros_like(v01), 0.25, source="from01")
    assert np.array_equal(vt0[1, 2], [-1.0, 0.0])
    assert np.array_equal(vt1[1, 2], [3.0, 0.0])


def test_borrowed_from10():
    # V10 = (-4, 2), t = 0.25: Vt0 = t V10 = (-1, 0.5), Vt1 = -(1-t) V10 = (3, -1.5)
    v10 = _const_field(-4.0, 2.0)
    vt0, vt1 = approx_borrowed(np.zeros_like(v10), v10, 0.25, source="from10")
    assert np.array_equal(vt0[0, 0], [-1.0, 0.5])
    assert np.array_equal(vt1[0, 0], [3.0, -1.5])


def test_borrowed_rejects_unknown_source():
    f = _const_field(1.0, 0.0)
    with pytest.raises(ValueError):
        approx_borrowed(f, f, 0.5, source="sideways")


def test_borrowed_pair_is_linear_consistent():
    # borrowed fields always satisfy the symmetric relation
    v01 = _const_field(6.0, -4.0)
    for t in (0.25, 0.5, 0.75):
        vt0, vt1 = approx_borrowed(v01, np.zeros_like(v01), t, source="from01")
        assert np.allclose(vt0, -(t / (1.0 - t)) * vt1, atol=1e-12)


def test_blended_quarter_t():
    # V01 = (4, 0), V10 = (-4, 0), t = 0.25:
    # Vt0 = -(1-t) t V01 + t^2 V10 = -0.1875*4 + 0.0625*(-4) = -1
    # Vt1 = (1-t)^2 V01 - t (1-t) V10 = 0.5625*4 - 0.1875*(-4) = 3
    v01 = _const_field(4.0, 0.0)
    v10 = _const_field(-4.0, 0.0)
    vt0, vt1 = approx_blended(v01, v10, 0.25)
    assert np.allclose(vt0[0, 0], [-1.0, 0.0], atol=1e-12)
    assert np.allclose(vt1[0, 0], [3.0, 0.0], atol=1e-12)


def test_blended_equals_borrowed_for_consistent_flows():
    # when V10 = -V01 the blend collapses to the from01 borrowed pair
    rng = np.random.default_rng(5)
    v01 = rng.normal(size=(4, 4, 2))
    for t in (0.25, 0.5, 0.6):
        b0, b1 = approx_blended(v01, -v01, t)
        r0, r1 = approx_borrowed(v01, -v01, t, source="from01")
        assert np.allclose(b0, r0, atol=1e-12)
        assert np.allclose(b1, r1, atol=1e-12)


def test_counterpart_quarter_t():
    # t = 0.25: Vt0 = -(1/3) Vt1
    vt1 = _const_field(3.0, -6.0)
    vt0 = symmetric_counterpart(vt1, 0.25)
    assert np.allclose(vt0[0, 0], [-1.0, 2.0], atol=1e-12)


def test_counterpart_midpoint_is_negation():
    rng = np.random.default_rng(6)
    vt1 = rng.normal(size=(3, 3, 2))
    assert np.array_equal(symmetric_counterpart(vt1, 0.5), -vt1)


def test_counterpart_rejects_boundary_t():
    f = _const_field(1.0, 1.0)
    for t in (0.0, 1.0):
        with pytest.raises(ValueError):
            symmetric_counterpart(f, t)
