"""Array conventions, bilinear sampling, and pyramid resampling."""

import numpy as np
import pytest

from midframe.image import (
    as_field,
    as_frame,
    as_mask,
    build_pyramid,
    downsample_box,
    resize_bilinear,
    sample_bilinear,
    upsample_field,
)


def test_as_frame_promotes_2d_to_single_channel():
    out = as_frame(np.zeros((4, 5)))
    assert out.shape == (4, 5, 1)
    assert out.dtype == np.float64


def test_as_frame_rejects_non_finite():
    bad = np.full((2, 2, 1), np.nan)
    with pytest.raises(ValueError):
        as_frame(bad)


def test_as_frame_rejects_wrong_rank():
    with pytest.raises(ValueError):
        as_frame(np.zeros((2, 2, 2, 2)))


def test_as_field_requires_two_components():
    with pytest.raises(ValueError):
        as_field(np.zeros((3, 3, 3)))
    assert as_field(np.zeros((3, 3, 2))).shape == (3, 3, 2)


def test_as_mask_requires_2d():
    with pytest.raises(ValueError):
        as_mask(np.zeros((3, 3, 1)))
    assert as_mask(np.ones((2, 4))).shape == (2, 4)


def test_sample_bilinear_integer_coords_exact():
    img = np.arange(12, dtype=np.float64).reshape(3, 4, 1)
    for y in range(3):
        for x in range(4):
            got = sample_bilinear(img, float(x), float(y))
            assert got[0] == img[y, x, 0]


def test_sample_bilinear_midpoint():
    img = np.array([[[0.0], [1.0]], [[2.0], [3.0]]])
    # centre of the 2x2 block averages all four texels
    got = sample_bilinear(img, 0.5, 0.5)
    assert got[0] == pytest.approx(1.5, abs=1e-12)


def test_sample_bilinear_clamp_vs_zero_border():
    img = np.full((2, 2, 1), 7.0)
    assert sample_bilinear(img, -3.0, 0.0, border="clamp")[0] == 7.0
    assert sample_bilinear(img, -3.0, 0.0, border="zero")[0] == 0.0
    # zero border fades linearly within one texel of the edge
    assert sample_bilinear(img, -0.5, 0.0, border="zero")[0] == pytest.approx(3.5)


def test_downsample_box_exact_quad_means():
    img = np.array(
        [[1.0, 3.0, 5.0, 7.0],
         [9.0, 11.0, 13.0, 15.0],
         [2.0, 4.0, 6.0, 8.0],
         [10.0, 12.0, 14.0, 16.0]]
    )[:, :, None]
    out = downsample_box(img)
    expect = np.array([[6.0, 10.0], [7.0, 11.0]])
    assert np.array_equal(out[:, :, 0], expect)


def test_downsample_box_odd_dims_replicate_edge():
    img = np.array([[1.0, 3.0, 5.0]])[:, :, None]  # 1x3
    out = downsample_box(img)
    # rows replicate, columns pair as (1,3) then (5,5)
    assert out.shape == (1, 2, 1)
    assert np.array_equal(out[0, :, 0], [2.0, 5.0])


def test_build_pyramid_shapes_and_order():
    img = np.zeros((32, 48, 3))
    pyr = build_pyramid(img, 3)
    assert [lvl.shape[:2] for lvl in pyr] == [(8, 12), (16, 24), (32, 48)]
    assert pyr[-1] is not img  # defensive copy at the finest level


def test_build_pyramid_rejects_too_deep():
    with pytest.raises(ValueError):
        build_pyramid(np.zeros((4, 4, 1)), 4)
    with pytest.raises(ValueError):
        build_pyramid(np.zeros((4, 4, 1)), 0)


def test_resize_bilinear_identity_is_exact():
    rng = np.random.default_rng(3)
    img = rng.random((5, 7, 3))
    out = resize_bilinear(img, 5, 7)
    assert np.array_equal(out, img)
    assert out is not img


def test_resize_bilinear_constant_preserved():
    img = np.full((3, 3, 2), 0.25)
    out = resize_bilinear(img, 9, 5)
    assert np.allclose(out, 0.25, atol=1e-12)


def test_resize_bilinear_doubling_centres():
    # doubling a 1x2 row: output centres at src coords -0.25, 0.25, 0.75, 1.25
    img = np.array([[0.0, 1.0]])[:, :, None]
    out = resize_bilinear(img, 1, 4)[0, :, 0]
    assert np.allclose(out, [0.0, 0.25, 0.75, 1.0], atol=1e-12)


def test_upsample_field_scales_components():
    field = np.zeros((2, 2, 2))
    field[:, :, 0] = 1.0  # one pixel of x motion at quarter scale
    field[:, :, 1] = -2.0
    up = upsample_field(field, 4, 8)
    assert up.shape == (4, 8, 2)
    assert np.allclose(up[:, :, 0], 4.0, atol=1e-12)  # width grew 4x
    assert np.allclose(up[:, :, 1], -4.0, atol=1e-12)  # height grew 2x


def test_upsample_field_rejects_shrink():
    with pytest.raises(ValueError):
        upsample_field(np.zeros((4, 4, 2)), 2, 8)


def test_upsample_field_same_size_noop():
    rng = np.random.default_rng(9)
    field = rng.random((3, 3, 2))
    assert np.array_equal(upsample_field(field, 3, 3), field)
