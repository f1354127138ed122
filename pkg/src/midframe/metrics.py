"""Frame-pair quality metrics: PSNR, SSIM, Charbonnier and soft census.

SSIM recipe: 11x11 Gaussian window with sigma 1.5, C1 = 0.01^2, C2 = 0.03^2,
computed on the channel-mean image with peak 1; the map is averaged over
pixels whose window lies fully inside the frame.

Census recipe: per pixel, the signature over the 7x7 neighbourhood (48
offsets) is c_k = (p_k - p_c) / sqrt((p_k - p_c)^2 + 0.81) on the
channel-mean image; the distance is the mean over interior pixels of
sum_k d_k^2 / (0.1 + d_k^2) with d_k the signature difference.  Signatures
depend only on intensity differences, so a global brightness shift leaves
the distance unchanged.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.ndimage import correlate1d

from .image import as_frame

_SSIM_C1 = 0.01 ** 2
_SSIM_C2 = 0.03 ** 2
_SSIM_RADIUS = 5
_CENSUS_RADIUS = 3


def _pair(a, b, min_dim=1):
    fa = as_frame(a, "a")
    fb = as_frame(b, "b")
    if fa.shape != fb.shape:
        raise ValueError(f"frame dims differ: {fa.shape} vs {fb.shape}")
    if min(fa.shape[0], fa.shape[1]) < min_dim:
        raise ValueError(f"frames of shape {fa.shape[:2]} smaller than the {min_dim}-texel window")
    return fa, fb


def psnr(a, b):
    """10 log10(1 / MSE) with peak 1; identical frames give inf."""
    fa, fb = _pair(a, b)
    d = fa - fb
    mse = float(np.mean(d * d))
    if mse == 0.0:
        return math.inf
    return -10.0 * math.log10(mse)


def _gaussian_taps(radius, sigma):
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return k / k.sum()


_SSIM_TAPS = _gaussian_taps(_SSIM_RADIUS, 1.5)


def _ssim_filter(img):
    return correlate1d(correlate1d(img, _SSIM_TAPS, axis=0), _SSIM_TAPS, axis=1)


def ssim(a, b):
    fa, fb = _pair(a, b, min_dim=2 * _SSIM_RADIUS + 1)
    x = fa.mean(axis=2)
    y = fb.mean(axis=2)
    mu_x = _ssim_filter(x)
    mu_y = _ssim_filter(y)
    var_x = _ssim_filter(x * x) - mu_x * mu_x
    var_y = _ssim_filter(y * y) - mu_y * mu_y
    cov = _ssim_filter(x * y) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + _SSIM_C1) * (2.0 * cov + _SSIM_C2)
    den = (mu_x * mu_x + mu_y * mu_y + _SSIM_C1) * (var_x + var_y + _SSIM_C2)
    r = _SSIM_RADIUS
    return float(np.mean((num / den)[r:-r, r:-r]))


def charbonnier(a, b, alpha=0.5, eps=1e-6):
    """Mean of ((a - b)^2 + eps^2)^alpha; identical frames give eps^(2 alpha)."""
    fa, fb = _pair(a, b)
    d = fa - fb
    return float(np.mean((d * d + eps * eps) ** alpha))


def census_features(image):
    """Soft census signature map, (H, W, 48), edge-replicated neighbours.

    Accepts a 2-D intensity image or a frame (reduced by channel mean).
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim == 3:
        img = img.mean(axis=2)
    if img.ndim != 2:
        raise ValueError(f"expected an image, got shape {img.shape}")
    r = _CENSUS_RADIUS
    p = np.pad(img, r, mode="edge")
    h, w = img.shape
    feats = np.empty((h, w, (2 * r + 1) ** 2 - 1), dtype=np.float64)
    idx = 0
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            if dx == 0 and dy == 0:
                continue
            d = p[r + dy:r + dy + h, r + dx:r + dx + w] - img
            feats[:, :, idx] = d / np.sqrt(d * d + 0.81)
            idx += 1
    return feats


def census_distance(a, b):
    """Soft Hamming distance between census signatures, interior mean."""
    fa, fb = _pair(a, b, min_dim=2 * _CENSUS_RADIUS + 1)
    d = census_features(fa) - census_features(fb)
    per_px = np.sum((d * d) / (0.1 + d * d), axis=2)
    r = _CENSUS_RADIUS
    return float(np.mean(per_px[r:-r, r:-r]))
