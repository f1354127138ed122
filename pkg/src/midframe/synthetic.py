"""Seeded synthetic triplets: one textured sprite moving over a textured field.

Every scene is a pure function of (seed, kind, size); frames are float RGB
in [0, 1] and the ground truth sits at t = 0.5.  Alongside the triplet the
generator returns the true (Vt0, Vt1) displacement fields on the
ground-truth grid (zero on the background, the sprite's motion on the
texels it owns at time t).
"""

from __future__ import annotations

import numpy as np

from .dataset import Triplet
from .image import resize_bilinear

KINDS = ("translate", "accelerate", "occlude", "rotate")


def _noise(rng, size, cells):
    grid = rng.uniform(0.0, 1.0, size=(cells + 1, cells + 1, 3))
    return resize_bilinear(grid, size, size)


def _texture(rng, size, lo, hi):
    mix = (
        0.45 * _noise(rng, size, max(2, size // 16))
        + 0.35 * _noise(rng, size, max(3, size // 8))
        + 0.2 * _noise(rng, size, max(5, size // 4))
    )
    return lo + (hi - lo) * mix


def _sprite_texture(rng, s):
    mix = 0.5 * _noise(rng, s, max(2, s // 4)) + 0.5 * _noise(rng, s, max(3, s // 2))
    return 0.05 + 0.9 * mix


def _sprite_two_tone(rng, s):
    """High-contrast sprite; its matching errors cost enough to separate the
    motion models cleanly."""
    base = _noise(rng, s, max(2, s // 4))[:, :, :1]
    fine = _noise(rng, s, max(3, s // 2))
    tone = np.where(base > 0.5, 0.9, 0.1)
    return np.clip(tone + 0.25 * (fine - 0.5), 0.0, 1.0)


def _paste(canvas, tex, x, y):
    s = tex.shape[0]
    canvas[y:y + s, x:x + s] = tex


def _gather(tex, xs, ys):
    """Bilinear gather at float coords known to lie inside the texture."""
    s = tex.shape[0]
    x0 = np.clip(np.floor(xs).astype(np.int64), 0, s - 1)
    y0 = np.clip(np.floor(ys).astype(np.int64), 0, s - 1)
    x1 = np.minimum(x0 + 1, s - 1)
    y1 = np.minimum(y0 + 1, s - 1)
    fx = (xs - np.floor(xs))[:, :, None]
    fy = (ys - np.floor(ys))[:, :, None]
    top = tex[y0, x0] * (1.0 - fx) + tex[y0, x1] * fx
    bot = tex[y1, x0] * (1.0 - fx) + tex[y1, x1] * fx
    return top * (1.0 - fy) + bot * fy


def _paste_rotated(canvas, tex, x, y, angle):
    """Composite tex rotated by angle about its centre, anchored at (x, y)."""
    s = tex.shape[0]
    c = (s - 1) / 2.0
    pad = int(np.ceil(s * 0.21)) + 2  # room for corners swung out by rotation
    x_lo = max(0, x - pad)
    y_lo = max(0, y - pad)
    x_hi = min(canvas.shape[1], x + s + pad)
    y_hi = min(canvas.shape[0], y + s + pad)
    ys, xs = np.mgrid[y_lo:y_hi, x_lo:x_hi].astype(np.float64)
    rx = xs - (x + c)
    ry = ys - (y + c)
    ca, sa = np.cos(-angle), np.sin(-angle)
    tx = ca * rx - sa * ry + c
    ty = sa * rx + ca * ry + c
    inside = (tx >= 0.0) & (tx <= s - 1.0) & (ty >= 0.0) & (ty <= s - 1.0)
    values = _gather(tex, tx, ty)
    region = canvas[y_lo:y_hi, x_lo:x_hi]
    region[inside] = values[inside]


def gen_synthetic(seed, kind, size=128):
    """Build one scene; returns (Triplet, (vt0_true, vt1_true))."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not isinstance(size, int) or size < 32:
        raise ValueError(f"size must be an int >= 32, got {size!r}")
    rng = np.random.default_rng(seed)
    bg = _texture(rng, size, 0.15, 0.85)
    s = size // 4
    # acceleration scenes carry the high-contrast sprite so that model
    # errors separate cleanly; the other kinds keep the soft one
    if kind == "accelerate":
        sprite = _sprite_two_tone(rng, s)
    else:
        sprite = _sprite_texture(rng, s)

    frames = [bg.copy(), bg.copy(), bg.copy()]
    vt0 = np.zeros((size, size, 2), dtype=np.float64)
    vt1 = np.zeros((size, size, 2), dtype=np.float64)
    m = size // 8

    def spot(lo, hi):
        return int(rng.integers(lo, hi + 1))

    if kind == "translate":
        dx = 2 * spot(2, max(2, size // 16)) * (1 if rng.random() < 0.5 else -1)
        dy = 2 * spot(0, max(1, size // 32)) * (1 if rng.random() < 0.5 else -1)
        px = spot(m, size - s - m)
        py = spot(m, size - s - m)
        _paste(frames[0], sprite, px - dx // 2, py - dy // 2)
        _paste(frames[1], sprite, px, py)
        _paste(frames[2], sprite, px + dx // 2, py + dy // 2)
        vt0[py:py + s, px:px + s] = (-dx / 2.0, -dy / 2.0)
        vt1[py:py + s, px:px + s] = (dx / 2.0, dy / 2.0)
    elif kind == "accelerate":
        dmax = max(3, 3 * size // 32)
        dx = spot(max(2, size // 32), dmax) * (1 if rng.random() < 0.5 else -1)
        dy = spot(-min(3, dmax), min(3, dmax))
        margin = 3 * dmax + 2
        bx = spot(margin, size - s - margin)
        by = spot(margin, size - s - margin)
        _paste(frames[0], sprite, bx, by)
        _paste(frames[1], sprite, bx + dx, by + dy)
        _paste(frames[2], sprite, bx + 3 * dx, by + 3 * dy)
        px, py = bx + dx, by + dy
        vt0[py:py + s, px:px + s] = (-dx, -dy)
        vt1[py:py + s, px:px + s] = (2 * dx, 2 * dy)
    elif kind == "occlude":
        blocker = _sprite_texture(rng, s)
        ox = spot((size - s) // 2 - 4, (size - s) // 2 + 4)
        oy = spot((size - s) // 2 - 4, (size - s) // 2 + 4)
        dx = 2 * spot(max(2, size // 16), max(3, size // 8)) * (1 if rng.random() < 0.5 else -1)
        dy = 2 * spot(0, 2) * (1 if rng.random() < 0.5 else -1)
        px = ox + spot(-s // 4, s // 4)
        py = oy + spot(-s // 4, s // 4)
        for fr, step in zip(frames, (-1, 0, 1)):
            _paste(fr, blocker, ox, oy)
            _paste(fr, sprite, px + step * (dx // 2), py + step * (dy // 2))
        vt0[py:py + s, px:px + s] = (-dx / 2.0, -dy / 2.0)
        vt1[py:py + s, px:px + s] = (dx / 2.0, dy / 2.0)
    else:  # rotate
        theta = rng.uniform(0.09, 0.26) * (1 if rng.random() < 0.5 else -1)
        px = spot(m, size - s - m)
        py = spot(m, size - s - m)
        _paste_rotated(frames[0], sprite, px, py, -theta)
        _paste(frames[1], sprite, px, py)
        _paste_rotated(frames[2], sprite, px, py, theta)
        c = (s - 1) / 2.0
        ys, xs = np.mgrid[0:s, 0:s].astype(np.float64)
        rx = xs - c
        ry = ys - c
        for fld, ang in ((vt0, -theta), (vt1, theta)):
            ca, sa = np.cos(ang), np.sin(ang)
            fld[py:py + s, px:px + s, 0] = (ca * rx - sa * ry) - rx
            fld[py:py + s, px:px + s, 1] = (sa * rx + ca * ry) - ry

    trip = Triplet(
        frame0=frames[0],
        gt=frames[1],
        frame1=frames[2],
        id=f"{kind}_{seed:05d}",
        t=0.5,
    )
    return trip, (vt0, vt1)
