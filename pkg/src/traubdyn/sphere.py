"""Riemann sphere helpers: the point at infinity and the chordal metric."""

from __future__ import annotations

import math

import numpy as np

#: Canonical representation of the point at infinity.
INF = complex(math.inf, 0.0)


def is_inf(z) -> bool:
    """True if z represents the point at infinity (any non-finite complex)."""
    z = complex(z)
    return not (math.isfinite(z.real) and math.isfinite(z.imag))


def chordal(z, w) -> float:
    """Chordal distance on the Riemann sphere (diameter 2 normalization)."""
    zi, wi = is_inf(z), is_inf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.hypot(1.0, abs(complex(w)))
    if wi:
        return 2.0 / math.hypot(1.0, abs(complex(z)))
    z, w = complex(z), complex(w)
    return 2.0 * abs(z - w) / (math.hypot(1.0, abs(z)) * math.hypot(1.0, abs(w)))


def chordal_array(z, w):
    """Vectorized chordal distance; non-finite entries are treated as infinity."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    az = np.abs(z)
    aw = np.abs(w)
    zfin = np.isfinite(az)
    wfin = np.isfinite(aw)
    hz = np.hypot(1.0, np.where(zfin, az, 0.0))
    hw = np.hypot(1.0, np.where(wfin, aw, 0.0))
    with np.errstate(invalid="ignore"):
        d = 2.0 * np.abs(np.where(zfin & wfin, z - w, 0.0)) / (hz * hw)
    # one point at infinity: distance to the other's antipodal projection
    d = np.where(zfin & ~wfin, 2.0 / hz, d)
    d = np.where(~zfin & wfin, 2.0 / hw, d)
    d = np.where(~zfin & ~wfin, 0.0, d)
    return d
