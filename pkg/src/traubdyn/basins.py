"""Orbit classification, dynamical-plane rendering, and raster topology probes.

Rendering is deterministic under any worker count: the plane is cut into
fixed-size row blocks, every pixel is classified by the same elementwise
kernel, and blocks are assembled by index, never by completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .maps import TraubMap
from .sphere import INF, chordal, chordal_array, is_inf

__all__ = [
    "INFINITY_CLASS",
    "OTHER_CLASS",
    "IterSettings",
    "OrbitOutcome",
    "PlaneSpec",
    "BasinRaster",
    "ComponentMask",
    "RootOutsideViewport",
    "RootPixelMisclassified",
    "classify_orbit",
    "render_dynamical_plane",
    "immediate_basin",
    "hole_count",
    "largest_hole",
    "unbounded_probe",
    "raster_stats",
]

INFINITY_CLASS = 254
OTHER_CLASS = 255

_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_EIGHT = np.ones((3, 3), dtype=bool)

_CYCLE_TOL = 1e-13
_BLOCK_ROWS = 32


class RootOutsideViewport(ValueError):
    pass


class RootPixelMisclassified(ValueError):
    pass


@dataclass(frozen=True)
class IterSettings:
    max_iter: int = 500
    root_tol: float = 1e-10  # chordal
    escape_radius: float = 1e8
    cycle_window: int = 40

    def __post_init__(self):
        if self.max_iter < 1 or self.root_tol <= 0 or self.escape_radius <= 1:
            raise ValueError("invalid iteration settings")


@dataclass(frozen=True)
class OrbitOutcome:
    kind: str  # "root" | "infinity" | "other"
    root_index: int | None
    iterations: int
    final: complex


@dataclass(frozen=True)
class PlaneSpec:
    """Axis-aligned complex viewport; pixels are sampled at their centers.

    Row 0 is the top of the image (largest imaginary part); height follows
    from the aspect ratio.
    """

    center: complex
    width: float
    px_w: int
    px_h: int

    def __post_init__(self):
        if self.width <= 0 or self.px_w < 1 or self.px_h < 1:
            raise ValueError("invalid plane spec")

    @property
    def height(self) -> float:
        return self.width * self.px_h / self.px_w

    def grid(self) -> np.ndarray:
        i = np.arange(self.px_w)
        j = np.arange(self.px_h)
        re = self.center.real + ((i + 0.5) / self.px_w - 0.5) * self.width
        im = self.center.imag + (0.5 - (j + 0.5) / self.px_h) * self.height
        return re[None, :] + 1j * im[:, None]

    def pixel_of(self, z: complex) -> tuple[int, int]:
        """(row, col) of the pixel containing z; raises if outside."""
        col = int(np.floor((z.real - self.center.real) / self.width * self.px_w + self.px_w / 2))
        row = int(np.floor((self.center.imag - z.imag) / self.height * self.px_h + self.px_h / 2))
        if not (0 <= row < self.px_h and 0 <= col < self.px_w):
            raise RootOutsideViewport(f"{z} outside viewport")
        return row, col


@dataclass
class BasinRaster:
    spec: PlaneSpec
    classes: np.ndarray  # uint8, (px_h, px_w)
    iters: np.ndarray  # int32, same shape
    map: TraubMap | None = None


@dataclass
class ComponentMask:
    spec: PlaneSpec
    bits: np.ndarray  # bool, (px_h, px_w)
    seed: tuple[int, int]


def _step_array(z, coeffs, dcoeffs, delta):
    """One damped Traub step on an array, finite chart only."""
    pz = _horner_arr(coeffs, z)
    dpz = _horner_arr(dcoeffs, z)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        n = z - pz / dpz
        if delta == 0:
            return n
        pn = _horner_arr(coeffs, n)
        return n - delta * pn / dpz


def _horner_arr(coeffs, z):
    acc = np.full(z.shape, coeffs[-1], dtype=complex)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _orbit_kernel(z0, m: TraubMap, s: IterSettings):
    """Classify a flat array of initial points.

    Returns (classes uint8, iterations int32, finals complex). Root classes
    are indices into m.roots; non-convergent orbits get OTHER_CLASS and
    escaping ones INFINITY_CLASS (only when infinity is attracting).
    """
    roots = m.root_points
    coeffs = m.p.coeffs
    dcoeffs = m.dp.coeffs
    inf_cls = m.infinity_class()
    inf_attracting = inf_cls is not None and inf_cls.kind in ("attracting", "superattracting")

    n = z0.size
    z = z0.astype(complex).copy()
    cls = np.full(n, OTHER_CLASS, dtype=np.uint8)
    iters = np.full(n, s.max_iter, dtype=np.int32)
    final = z.copy()
    cand = np.full(n, -1, dtype=np.int64)
    cand_it = np.zeros(n, dtype=np.int32)
    done = np.zeros(n, dtype=bool)
    snap = z.copy()

    dist = chordal_array(z[:, None], roots[None, :])
    idx = np.argmin(dist, axis=1)
    best = dist[np.arange(n), idx]
    near = best < s.root_tol
    cand[near] = idx[near]

    if inf_attracting:
        nonfin = ~np.isfinite(z.real) | ~np.isfinite(z.imag)
        cls[nonfin] = INFINITY_CLASS
        iters[nonfin] = 0
        done[nonfin] = True

    active = np.flatnonzero(~done)
    for step in range(1, s.max_iter + 1):
        if active.size == 0:
            break
        za = _step_array(z[active], coeffs, dcoeffs, m.delta)
        z[active] = za
        final[active] = za

        dist = chordal_array(za[:, None], roots[None, :])
        idx = np.argmin(dist, axis=1)
        best = dist[np.arange(active.size), idx]

        c = cand[active]
        has_c = c >= 0
        cdist = np.where(has_c, dist[np.arange(active.size), np.where(has_c, c, 0)], np.inf)
        confirmed = has_c & (cdist < 10.0 * s.root_tol)
        conf_idx = active[confirmed]
        cls[conf_idx] = c[confirmed].astype(np.uint8)
        iters[conf_idx] = cand_it[conf_idx]
        done[conf_idx] = True

        failed = has_c & ~confirmed
        cand[active[failed]] = -1

        fresh = ~has_c | failed
        newly = fresh & (best < s.root_tol) & ~confirmed
        new_idx = active[newly]
        cand[new_idx] = idx[newly]
        cand_it[new_idx] = step

        if inf_attracting:
            az = np.abs(za)
            esc = (~np.isfinite(az) | (az > s.escape_radius)) & ~confirmed
            esc_idx = active[esc]
            cls[esc_idx] = INFINITY_CLASS
            iters[esc_idx] = step
            done[esc_idx] = True

        if step % s.cycle_window == 0:
            cyc = (chordal_array(za, snap[active]) < _CYCLE_TOL) & ~done[active]
            cyc_idx = active[cyc]
            cls[cyc_idx] = OTHER_CLASS
            iters[cyc_idx] = step
            done[cyc_idx] = True
            snap[active] = za

        active = active[~done[active]]
    return cls, iters, final


def classify_orbit(m: TraubMap, z0, s: IterSettings = IterSettings()) -> OrbitOutcome:
    """Classify a single initial condition by iterating the damped step.

    Convergence is declared on chordal distance to a cached root (with a
    one-step confirmation); escape to infinity only counts when infinity is
    attracting; everything else is "other".
    """
    z0c = complex(z0) if not is_inf(z0) else INF
    cls, iters, final = _orbit_kernel(np.array([z0c]), m, s)
    c = int(cls[0])
    if c == OTHER_CLASS:
        return OrbitOutcome("other", None, int(iters[0]), complex(final[0]))
    if c == INFINITY_CLASS:
        return OrbitOutcome("infinity", None, int(iters[0]), complex(final[0]))
    return OrbitOutcome("root", c, int(iters[0]), complex(final[0]))


def render_dynamical_plane(
    m: TraubMap,
    spec: PlaneSpec,
    s: IterSettings = IterSettings(),
    workers: int = 1,
    refine_other: bool = False,
) -> BasinRaster:
    """Per-pixel orbit classification over the viewport.

    Output is bit-identical for any worker count. With refine_other, pixels
    that came out non-convergent but touch a root-classified pixel are retried
    once with 4x the iteration budget.
    """
    grid = spec.grid()
    classes = np.empty(grid.shape, dtype=np.uint8)
    iters = np.empty(grid.shape, dtype=np.int32)

    blocks = [
        slice(r0, min(r0 + _BLOCK_ROWS, spec.px_h)) for r0 in range(0, spec.px_h, _BLOCK_ROWS)
    ]

    def run(block):
        flat = grid[block].ravel()
        c, it, _ = _orbit_kernel(flat, m, s)
        return c.reshape(grid[block].shape), it.reshape(grid[block].shape)

    if workers <= 1 or len(blocks) == 1:
        results = [run(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))
    for b, (c, it) in zip(blocks, results):
        classes[b] = c
        iters[b] = it

    if refine_other:
        other = classes == OTHER_CLASS
        rooty = classes < INFINITY_CLASS
        near_root = ndimage.binary_dilation(rooty, structure=_FOUR)
        retry = other & near_root
        if np.any(retry):
            s4 = IterSettings(s.max_iter * 4, s.root_tol, s.escape_radius, s.cycle_window)
            c, it, _ = _orbit_kernel(grid[retry], m, s4)
            classes[retry] = c
            iters[retry] = it

    return BasinRaster(spec=spec, classes=classes, iters=iters, map=m)


def immediate_basin(r: BasinRaster, root_index: int) -> ComponentMask:
    """4-connected component of the root's class containing the root pixel."""
    if r.map is None:
        raise ValueError("raster carries no map; cannot locate the root")
    root = r.map.roots[root_index][0]
    seed = r.spec.pixel_of(root)
    if r.classes[seed] != root_index:
        raise RootPixelMisclassified(
            f"root pixel {seed} has class {r.classes[seed]}, expected {root_index}"
        )
    labels, _ = ndimage.label(r.classes == root_index, structure=_FOUR)
    bits = labels == labels[seed]
    return ComponentMask(spec=r.spec, bits=bits, seed=seed)


def hole_count(mask: ComponentMask) -> int:
    """Complement components (8-connected) not touching the raster border."""
    comp = ~mask.bits
    labels, n = ndimage.label(comp, structure=_EIGHT)
    if n == 0:
        return 0
    border = np.unique(
        np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    )
    border = border[border != 0]
    return n - border.size


def largest_hole(mask: ComponentMask) -> int:
    """Pixel area of the largest hole of the mask (0 when there is none)."""
    comp = ~mask.bits
    labels, n = ndimage.label(comp, structure=_EIGHT)
    if n == 0:
        return 0
    border = np.unique(
        np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    )
    counts = np.bincount(labels.ravel(), minlength=n + 1)
    counts[border] = 0
    counts[0] = 0
    return int(counts.max())


def unbounded_probe(
    m: TraubMap,
    root_index: int,
    widths,
    px: int = 400,
    s: IterSettings = IterSettings(),
    center: complex = 0j,
) -> list[bool]:
    """Border-touch heuristic for basin unboundedness over growing viewports.

    This is a raster proxy, not a proof: an unbounded immediate basin should
    touch the viewport border at every width.
    """
    widths = list(widths)
    if any(b <= a for a, b in zip(widths, widths[1:])):
        raise ValueError("widths must be strictly increasing")
    out = []
    for w in widths:
        spec = PlaneSpec(center=center, width=float(w), px_w=px, px_h=px)
        raster = render_dynamical_plane(m, spec, s)
        mask = immediate_basin(raster, root_index)
        bits = mask.bits
        out.append(bool(bits[0, :].any() or bits[-1, :].any() or bits[:, 0].any() or bits[:, -1].any()))
    return out


def raster_stats(r: BasinRaster):
    """Per-class pixel fraction and mean iteration count.

    Returns a list of (class_id, fraction, mean_iterations) sorted by class id;
    fractions are exact pixel-count ratios.
    """
    total = r.classes.size
    out = []
    for c in sorted(np.unique(r.classes)):
        sel = r.classes == c
        count = int(sel.sum())
        out.append((int(c), count / total, float(r.iters[sel].mean())))
    return out
