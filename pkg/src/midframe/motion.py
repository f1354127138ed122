"""Closed-form intermediate-motion models built from frame-to-frame flows."""

from __future__ import annotations

from .image import as_field
from .warp import _check_t


def scale_field(field, s):
    """Multiply every displacement by a scalar."""
    s = float(s)
    return as_field(field) * s


def approx_borrowed(v01, v10, t, source="from01"):
    """Intermediate fields borrowed from one frame-to-frame flow.

    from01 keeps V01's geometry: (Vt0, Vt1) = (-t V01, (1-t) V01).
    from10 keeps V10's:          (Vt0, Vt1) = (t V10, -(1-t) V10).
    The borrowed vectors are read as if they lived on the time-t grid.
    """
    t = _check_t(t)
    a = as_field(v01, "v01")
    b = as_field(v10, "v10")
    if a.shape != b.shape:
        raise ValueError(f"field dims differ: {a.shape} vs {b.shape}")
    if source == "from01":
        return -t * a, (1.0 - t) * a
    if source == "from10":
        return t * b, -(1.0 - t) * b
    raise ValueError(f"source must be 'from01' or 'from10', got {source!r}")


def approx_blended(v01, v10, t):
    """Time-weighted mix of both flows:

    Vt0 = -(1-t) t V01 + t^2 V10
    Vt1 = (1-t)^2 V01 - t (1-t) V10
    """
    t = _check_t(t)
    a = as_field(v01, "v01")
    b = as_field(v10, "v10")
    if a.shape != b.shape:
        raise ValueError(f"field dims differ: {a.shape} vs {b.shape}")
    vt0 = -(1.0 - t) * t * a + t * t * b
    vt1 = (1.0 - t) * (1.0 - t) * a - t * (1.0 - t) * b
    return vt0, vt1


def symmetric_counterpart(field, t):
    """Partner of a t->1 field under the symmetric constraint Vt0 = -(t/(1-t)) Vt1.

    Applying it twice with t and 1-t round-trips the field.
    """
    t = _check_t(t)
    return -(t / (1.0 - t)) * as_field(field)
