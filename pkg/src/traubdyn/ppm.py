"""Binary PPM (P6) output and the fixed basin/parameter colour maps.

Colour map contract: root class i of m attractors gets hue 360*i/m, full
saturation, and value 1 - 0.8 * min(iter, max_iter) / max_iter; non-convergent
pixels are black and escaped ones white. Channel rounding is half-up so the
bytes are reproducible across platforms.
"""

from __future__ import annotations

import numpy as np

from .basins import BasinRaster, INFINITY_CLASS, OTHER_CLASS
from .paramplane import PARAM_OTHER, ParamRaster

__all__ = ["write_ppm", "read_ppm", "hsv_to_rgb", "colorize_basin", "colorize_param"]


def write_ppm(path, rgb: np.ndarray) -> None:
    """Write an (h, w, 3) uint8 array as binary PPM, maxval 255, rows top-down."""
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError("expected (h, w, 3) uint8")
    h, w = rgb.shape[:2]
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        f.write(rgb.tobytes())


def read_ppm(path) -> np.ndarray:
    """Parse a binary PPM written by write_ppm back into (h, w, 3) uint8."""
    with open(path, "rb") as f:
        data = f.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos] in b" \t\r\n":
            pos += 1
        if data[pos : pos + 1] == b"#":
            while data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in b" \t\r\n":
            pos += 1
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    if fields[0] != b"P6":
        raise ValueError("not a binary PPM")
    w, h, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 255:
        raise ValueError("unsupported maxval")
    pixels = np.frombuffer(data[pos : pos + 3 * w * h], dtype=np.uint8)
    return pixels.reshape(h, w, 3)


def hsv_to_rgb(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Standard hue-sector HSV -> RGB on arrays; channels rounded half-up."""
    h = np.asarray(h, dtype=float) % 360.0
    c = v * s
    x = c * (1.0 - np.abs((h / 60.0) % 2.0 - 1.0))
    m = v - c
    sector = (h // 60).astype(int) % 6
    zeros = np.zeros_like(c)
    r = np.choose(sector, [c, x, zeros, zeros, x, c])
    g = np.choose(sector, [x, c, c, x, zeros, zeros])
    b = np.choose(sector, [zeros, zeros, x, c, c, x])
    rgb = np.stack([r + m, g + m, b + m], axis=-1)
    return np.floor(rgb * 255.0 + 0.5).astype(np.uint8)


def colorize_basin(r: BasinRaster, max_iter: int) -> np.ndarray:
    """Fixed colour map for dynamical planes."""
    n_roots = len(r.map.roots) if r.map is not None else int(r.classes[r.classes < INFINITY_CLASS].max(initial=0)) + 1
    n_roots = max(n_roots, 1)
    hue = 360.0 * r.classes.astype(float) / n_roots
    val = 1.0 - 0.8 * np.minimum(r.iters, max_iter) / max_iter
    sat = np.ones_like(val)
    rgb = hsv_to_rgb(hue, sat, val)
    rgb[r.classes == OTHER_CLASS] = (0, 0, 0)
    rgb[r.classes == INFINITY_CLASS] = (255, 255, 255)
    return rgb


def colorize_param(r: ParamRaster, max_iter: int) -> np.ndarray:
    """Fixed colour map for parameter planes.

    Black where any tracked orbit failed to settle; otherwise hue from the
    first orbit's class and value from the slowest convergence count.
    """
    any_other = np.any(r.classes == PARAM_OTHER, axis=0)
    slowest = np.max(r.iters, axis=0)
    n_cls = 2 if r.kind == "quadratic" else 3
    hue = 360.0 * r.classes[0].astype(float) / n_cls
    val = 1.0 - 0.8 * np.minimum(slowest, max_iter) / max_iter
    sat = np.ones_like(val)
    rgb = hsv_to_rgb(hue, sat, val)
    rgb[any_other] = (0, 0, 0)
    return rgb
