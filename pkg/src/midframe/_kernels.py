"""Compiled per-pixel kernels: bilinear sampling, warps, and block searches.

Everything here runs single-threaded with fastmath disabled so results are
reproducible bit for bit regardless of how callers schedule the work.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BORDER_CLAMP = 0
BORDER_ZERO = 1


@njit(cache=True, inline="always")
def _corners_clamp(x, y, h, w):
    """Bilinear footprint of (x, y) with corner indices clamped to the grid."""
    # Bound the coordinate first so the int cast below cannot overflow; any
    # point further than one texel outside behaves identically anyway.
    if x < -2.0:
        x = -2.0
    elif x > w + 1.0:
        x = w + 1.0
    if y < -2.0:
        y = -2.0
    elif y > h + 1.0:
        y = h + 1.0
    x0f = np.floor(x)
    y0f = np.floor(y)
    fx = x - x0f
    fy = y - y0f
    x0 = int(x0f)
    y0 = int(y0f)
    x1 = x0 + 1
    y1 = y0 + 1
    if x0 < 0:
        x0 = 0
    elif x0 > w - 1:
        x0 = w - 1
    if x1 < 0:
        x1 = 0
    elif x1 > w - 1:
        x1 = w - 1
    if y0 < 0:
        y0 = 0
    elif y0 > h - 1:
        y0 = h - 1
    if y1 < 0:
        y1 = 0
    elif y1 > h - 1:
        y1 = h - 1
    return x0, x1, y0, y1, fx, fy


@njit(cache=True, inline="always")
def _corners_raw(x, y, h, w):
    """Bilinear footprint of (x, y) with unclamped corner indices."""
    if x < -2.0:
        x = -2.0
    elif x > w + 1.0:
        x = w + 1.0
    if y < -2.0:
        y = -2.0
    elif y > h + 1.0:
        y = h + 1.0
    x0f = np.floor(x)
    y0f = np.floor(y)
    x0 = int(x0f)
    y0 = int(y0f)
    return x0, y0, x - x0f, y - y0f


@njit(cache=True, inline="always")
def _tex0(img, xi, yi, k, h, w):
    if xi < 0 or xi >= w or yi < 0 or yi >= h:
        return 0.0
    return img[yi, xi, k]


@njit(cache=True)
def sample_point(img, x, y, border, out):
    """Sample every channel of img at (x, y) into out."""
    h, w, ch = img.shape
    if border == BORDER_CLAMP:
        x0, x1, y0, y1, fx, fy = _corners_clamp(x, y, h, w)
        for k in range(ch):
            top = img[y0, x0, k] * (1.0 - fx) + img[y0, x1, k] * fx
            bot = img[y1, x0, k] * (1.0 - fx) + img[y1, x1, k] * fx
            out[k] = top * (1.0 - fy) + bot * fy
    else:
        x0, y0, fx, fy = _corners_raw(x, y, h, w)
        for k in range(ch):
            top = _tex0(img, x0, y0, k, h, w) * (1.0 - fx) + _tex0(img, x0 + 1, y0, k, h, w) * fx
            bot = _tex0(img, x0, y0 + 1, k, h, w) * (1.0 - fx) + _tex0(img, x0 + 1, y0 + 1, k, h, w) * fx
            out[k] = top * (1.0 - fy) + bot * fy


@njit(cache=True)
def backward_warp_k(field, img, border, out):
    """out(x) = img(x + field(x)) with bilinear sampling."""
    h, w, ch = img.shape
    for y in range(h):
        for x in range(w):
            sx = x + field[y, x, 0]
            sy = y + field[y, x, 1]
            if border == BORDER_CLAMP:
                x0, x1, y0, y1, fx, fy = _corners_clamp(sx, sy, h, w)
                for k in range(ch):
                    top = img[y0, x0, k] * (1.0 - fx) + img[y0, x1, k] * fx
                    bot = img[y1, x0, k] * (1.0 - fx) + img[y1, x1, k] * fx
                    out[y, x, k] = top * (1.0 - fy) + bot * fy
            else:
                x0, y0, fx, fy = _corners_raw(sx, sy, h, w)
                for k in range(ch):
                    top = _tex0(img, x0, y0, k, h, w) * (1.0 - fx) + _tex0(img, x0 + 1, y0, k, h, w) * fx
                    bot = _tex0(img, x0, y0 + 1, k, h, w) * (1.0 - fx) + _tex0(img, x0 + 1, y0 + 1, k, h, w) * fx
                    out[y, x, k] = top * (1.0 - fy) + bot * fy


@njit(cache=True)
def forward_splat_k(field, img, scale, acc, wacc):
    """Scatter img texels to x + field(x), accumulating values and weights.

    Source texels are visited in row-major order so accumulation is
    deterministic.  scale holds a per-texel contribution multiplier.
    """
    h, w, ch = img.shape
    for y in range(h):
        for x in range(w):
            tx = x + field[y, x, 0]
            ty = y + field[y, x, 1]
            if tx < -2.0 or tx > w + 1.0 or ty < -2.0 or ty > h + 1.0:
                continue
            x0 = int(np.floor(tx))
            y0 = int(np.floor(ty))
            fx = tx - np.floor(tx)
            fy = ty - np.floor(ty)
            s = scale[y, x]
            for dy in range(2):
                yy = y0 + dy
                if yy < 0 or yy >= h:
                    continue
                wy = fy if dy == 1 else 1.0 - fy
                for dx in range(2):
                    xx = x0 + dx
                    if xx < 0 or xx >= w:
                        continue
                    wx = fx if dx == 1 else 1.0 - fx
                    wgt = s * (wy * wx)
                    wacc[yy, xx] += wgt
                    for k in range(ch):
                        acc[yy, xx, k] += wgt * img[y, x, k]


@njit(cache=True)
def patch_cost_sad(a, b, x, y, vx, vy, c0, patch, z):
    """Mean absolute difference between a sampled at p + c0*v and b at p + v.

    The window is patch x patch texels centred on (x, y); each texel's
    contribution is weighted by z (clamped lookup) and the total divided by
    the weight sum times the channel count.  Clamp border on both frames.
    """
    h, w, ch = a.shape
    hp = patch // 2
    sx = c0 * vx
    sy = c0 * vy
    acc = 0.0
    wacc = 0.0
    for jj in range(-hp, hp + 1):
        py = y + jj
        zy = py
        if zy < 0:
            zy = 0
        elif zy > h - 1:
            zy = h - 1
        for ii in range(-hp, hp + 1):
            px = x + ii
            zx = px
            if zx < 0:
                zx = 0
            elif zx > w - 1:
                zx = w - 1
            ax0, ax1, ay0, ay1, afx, afy = _corners_clamp(px + sx, py + sy, h, w)
            bx0, bx1, by0, by1, bfx, bfy = _corners_clamp(px + vx, py + vy, h, w)
            zz = z[zy, zx]
            tex = 0.0
            for k in range(ch):
                atop = a[ay0, ax0, k] * (1.0 - afx) + a[ay0, ax1, k] * afx
                abot = a[ay1, ax0, k] * (1.0 - afx) + a[ay1, ax1, k] * afx
                va = atop * (1.0 - afy) + abot * afy
                btop = b[by0, bx0, k] * (1.0 - bfx) + b[by0, bx1, k] * bfx
                bbot = b[by1, bx0, k] * (1.0 - bfx) + b[by1, bx1, k] * bfx
                vb = btop * (1.0 - bfy) + bbot * bfy
                d = va - vb
                tex += d if d >= 0.0 else -d
            acc += zz * tex
            wacc += zz
    if wacc < 1e-6:
        return 0.0
    return acc / (wacc * ch)


@njit(cache=True)
def patch_cost_census(fa, fb, x, y, vx, vy, c0, patch, z):
    """Soft census variant of patch_cost_sad over precomputed signature maps.

    Per texel the cost is sum_k d_k^2 / (0.1 + d_k^2) between the bilinearly
    sampled signature vectors; the result is the z-weighted texel mean.
    """
    h, w, ch = fa.shape
    hp = patch // 2
    sx = c0 * vx
    sy = c0 * vy
    acc = 0.0
    wacc = 0.0
    for jj in range(-hp, hp + 1):
        py = y + jj
        zy = py
        if zy < 0:
            zy = 0
        elif zy > h - 1:
            zy = h - 1
        for ii in range(-hp, hp + 1):
            px = x + ii
            zx = px
            if zx < 0:
                zx = 0
            elif zx > w - 1:
                zx = w - 1
            ax0, ax1, ay0, ay1, afx, afy = _corners_clamp(px + sx, py + sy, h, w)
            bx0, bx1, by0, by1, bfx, bfy = _corners_clamp(px + vx, py + vy, h, w)
            zz = z[zy, zx]
            tex = 0.0
            for k in range(ch):
                atop = fa[ay0, ax0, k] * (1.0 - afx) + fa[ay0, ax1, k] * afx
                abot = fa[ay1, ax0, k] * (1.0 - afx) + fa[ay1, ax1, k] * afx
                va = atop * (1.0 - afy) + abot * afy
                btop = fb[by0, bx0, k] * (1.0 - bfx) + fb[by0, bx1, k] * bfx
                bbot = fb[by1, bx0, k] * (1.0 - bfx) + fb[by1, bx1, k] * bfx
                vb = btop * (1.0 - bfy) + bbot * bfy
                d = va - vb
                tex += (d * d) / (0.1 + d * d)
            acc += zz * tex
            wacc += zz
    if wacc < 1e-6:
        return 0.0
    return acc / wacc


@njit(cache=True)
def search_sad(a, b, base, z, c0, radius, patch, subpixel, out):
    """Exhaustive integer offset search around base, SAD patch cost.

    Candidates are scanned row-major over the offset grid; ties prefer the
    smaller squared offset, then the earlier candidate.  A 1-D parabola fit
    per axis refines the winner unless it sits on the window edge, the fit
    is not convex, or the integer cost is already exactly zero.
    """
    h, w = a.shape[0], a.shape[1]
    n = 2 * radius + 1
    costs = np.empty((n, n), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            bx = base[y, x, 0]
            by = base[y, x, 1]
            best = np.inf
            bi = 0
            bj = 0
            bd2 = 1 << 30
            for j in range(-radius, radius + 1):
                for i in range(-radius, radius + 1):
                    cst = patch_cost_sad(a, b, x, y, bx + i, by + j, c0, patch, z)
                    costs[j + radius, i + radius] = cst
                    d2 = i * i + j * j
                    if cst < best or (cst == best and d2 < bd2):
                        best = cst
                        bi = i
                        bj = j
                        bd2 = d2
            dx = float(bi)
            dy = float(bj)
            if subpixel == 1 and best > 0.0:
                ci = bi + radius
                cj = bj + radius
                if 0 < ci < n - 1:
                    cm = costs[cj, ci - 1]
                    cp = costs[cj, ci + 1]
                    den = (cm - best) + (cp - best)
                    if den > 0.0:
                        d = 0.5 * (cm - cp) / den
                        if d > 0.5:
                            d = 0.5
                        elif d < -0.5:
                            d = -0.5
                        dx += d
                if 0 < cj < n - 1:
                    cm = costs[cj - 1, ci]
                    cp = costs[cj + 1, ci]
                    den = (cm - best) + (cp - best)
                    if den > 0.0:
                        d = 0.5 * (cm - cp) / den
                        if d > 0.5:
                            d = 0.5
                        elif d < -0.5:
                            d = -0.5
                        dy += d
            out[y, x, 0] = bx + dx
            out[y, x, 1] = by + dy


@njit(cache=True)
def search_census(fa, fb, base, z, c0, radius, patch, subpixel, out):
    """search_sad twin operating on census signature maps."""
    h, w = fa.shape[0], fa.shape[1]
    n = 2 * radius + 1
    costs = np.empty((n, n), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            bx = base[y, x, 0]
            by = base[y, x, 1]
            best = np.inf
            bi = 0
            bj = 0
            bd2 = 1 << 30
            for j in range(-radius, radius + 1):
                for i in range(-radius, radius + 1):
                    cst = patch_cost_census(fa, fb, x, y, bx + i, by + j, c0, patch, z)
                    costs[j + radius, i + radius] = cst
                    d2 = i * i + j * j
                    if cst < best or (cst == best and d2 < bd2):
                        best = cst
                        bi = i
                        bj = j
                        bd2 = d2
            dx = float(bi)
            dy = float(bj)
            if subpixel == 1 and best > 0.0:
                ci = bi + radius
                cj = bj + radius
                if 0 < ci < n - 1:
                    cm = costs[cj, ci - 1]
                    cp = costs[cj, ci + 1]
                    den = (cm - best) + (cp - best)
                    if den > 0.0:
                        d = 0.5 * (cm - cp) / den
                        if d > 0.5:
                            d = 0.5
                        elif d < -0.5:
                            d = -0.5
                        dx += d
                if 0 < cj < n - 1:
                    cm = costs[cj - 1, ci]
                    cp = costs[cj + 1, ci]
                    den = (cm - best) + (cp - best)
                    if den > 0.0:
                        d = 0.5 * (cm - cp) / den
                        if d > 0.5:
                            d = 0.5
                        elif d < -0.5:
                            d = -0.5
                        dy += d
            out[y, x, 0] = bx + dx
            out[y, x, 1] = by + dy
