"""Damping-parameter planes driven by the free critical orbits.

Two planes are offered: the quadratic plane through the conjugate degree-4
family (tracking its unpinned critical point), and the cubic plane for
z**3 - 1 (tracking the two critical orbits that are distinct modulo the
rotation symmetry).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basins import IterSettings, PlaneSpec
from .sphere import chordal_array

__all__ = [
    "ParamOutcome",
    "ParamRaster",
    "PARAM_OTHER",
    "classify_parameter_quadratic",
    "classify_parameter_cubic",
    "render_param_plane",
    "param_settings",
    "cubic_critical_points",
]

PARAM_OTHER = 255
_BLOCK_ROWS = 32

# chordal ball of radius 1e-6 around 0 resp. infinity
_ZERO_BALL = 5.0000000000000015e-07  # solves 2r/sqrt(1+r^2) = 1e-6
_INF_BALL = 1.9999999999999998e06  # solves 2/sqrt(1+r^2) = 1e-6
_CONFIRM = 5

#: cube roots of unity, the attractors of the cubic plane
CUBIC_ROOTS = np.array(
    [1.0, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)], dtype=complex
)


def param_settings() -> IterSettings:
    """Default iteration budget for parameter planes."""
    return IterSettings(max_iter=300)


@dataclass(frozen=True)
class ParamOutcome:
    kind: str  # "zero" | "infinity" | "root" | "other"
    root_index: int | None
    iterations: int


@dataclass
class ParamRaster:
    spec: PlaneSpec
    kind: str  # "quadratic" | "cubic"
    classes: np.ndarray  # (n_orbits, px_h, px_w) uint8
    iters: np.ndarray  # same shape, int32


def _c_plus(deltas: np.ndarray) -> np.ndarray:
    """Vectorized unpinned critical point; the limit 0 at delta = 1."""
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = (2.0 + deltas) ** 2 - 4.0 * (1.0 - deltas) ** 2
        c = (-(2.0 + deltas) + np.sqrt(disc)) / (2.0 * (1.0 - deltas))
    return np.where(np.abs(deltas - 1.0) < 1e-12, 0.0, c)


def _gdelta_kernel(deltas: np.ndarray, z0: np.ndarray, s: IterSettings):
    """Iterate the conjugate quadratic map per-parameter; classify toward 0/inf.

    Membership in either superattracting basin is declared when the orbit
    enters the chordal 1e-6 ball and stays there for 5 confirmation steps.
    """
    n = deltas.size
    z = z0.astype(complex).copy()
    cls = np.full(n, PARAM_OTHER, dtype=np.uint8)
    iters = np.full(n, s.max_iter, dtype=np.int32)
    done = np.zeros(n, dtype=bool)
    in_ball = np.zeros(n, dtype=np.int8)  # 0 none, 1 zero-ball, 2 inf-ball
    streak = np.zeros(n, dtype=np.int32)
    entered = np.zeros(n, dtype=np.int32)

    def update_ball(idx, za, step):
        az = np.abs(za)
        nonfin = ~np.isfinite(az)
        near0 = az < _ZERO_BALL
        nearinf = (az > _INF_BALL) | nonfin
        ball = np.where(near0, 1, np.where(nearinf, 2, 0)).astype(np.int8)
        same = (ball == in_ball[idx]) & (ball != 0)
        streak[idx] = np.where(same, streak[idx] + 1, 0)
        fresh = (ball != 0) & ~same
        fresh_idx = idx[fresh]
        entered[fresh_idx] = step
        in_ball[idx] = ball
        settled = streak[idx] >= _CONFIRM
        settled_idx = idx[settled]
        cls[settled_idx] = np.where(in_ball[settled_idx] == 1, 0, 1).astype(np.uint8)
        iters[settled_idx] = entered[settled_idx]
        done[settled_idx] = True

    update_ball(np.arange(n), z, 0)
    active = np.flatnonzero(~done)
    for step in range(1, s.max_iter + 1):
        if active.size == 0:
            break
        za = z[active]
        d = deltas[active]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            num = za * za * (za * za + 2.0 * za + (1.0 - d))
            den = (1.0 - d) * za * za + 2.0 * za + 1.0
            za = num / den
        z[active] = za
        update_ball(active, za, step)
        active = active[~done[active]]
    return cls, iters


def classify_parameter_quadratic(delta: complex, s: IterSettings | None = None) -> ParamOutcome:
    """Classify one damping parameter through the orbit of the unpinned
    critical point of the conjugate quadratic map."""
    if delta == 0:
        raise ValueError("delta must be nonzero")
    s = s or param_settings()
    d = np.array([complex(delta)])
    cls, iters = _gdelta_kernel(d, _c_plus(d), s)
    return _quad_outcome(int(cls[0]), int(iters[0]))


def classify_gdelta_orbit(delta: complex, z0: complex, s: IterSettings | None = None) -> ParamOutcome:
    """Classify an arbitrary start under the conjugate quadratic map
    (used to check the mirror symmetry of the second critical orbit)."""
    s = s or param_settings()
    cls, iters = _gdelta_kernel(np.array([complex(delta)]), np.array([complex(z0)]), s)
    return _quad_outcome(int(cls[0]), int(iters[0]))


def _quad_outcome(c: int, it: int) -> ParamOutcome:
    if c == 0:
        return ParamOutcome("zero", None, it)
    if c == 1:
        return ParamOutcome("infinity", None, it)
    return ParamOutcome("other", None, it)


def cubic_critical_points(delta: complex):
    """Free critical points (c_plus, c_minus) of the map for z**3 - 1.

    Cube roots of the two radicand values; real radicands take the real cube
    root so that for real damping in (0, 1] the points sit on the real line as
    the real dynamics requires, complex ones take the principal branch.
    """
    d = np.array([complex(delta)])
    rp, rm = _cubic_radicands(d)
    return complex(_any_cbrt(rp)[0]), complex(_any_cbrt(rm)[0])


def _cubic_radicands(deltas: np.ndarray):
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.sqrt(27.0 * (16.0 * deltas + 11.0 * deltas**2))
        denom = 54.0 - 8.0 * deltas
        return (19.0 * deltas + s) / denom, (19.0 * deltas - s) / denom


def _any_cbrt(r: np.ndarray) -> np.ndarray:
    real = np.abs(r.imag) < 1e-14 * (1.0 + np.abs(r.real))
    with np.errstate(invalid="ignore"):
        principal = r ** (1.0 / 3.0)
    return np.where(real, np.cbrt(r.real).astype(complex), principal)


def _cubic_kernel(deltas: np.ndarray, z0: np.ndarray, s: IterSettings):
    """Iterate the cubic-family map per-parameter; classify toward the roots
    of unity with the same candidate/confirm rule as basin rendering."""
    n = deltas.size
    roots = CUBIC_ROOTS
    z = z0.astype(complex).copy()
    cls = np.full(n, PARAM_OTHER, dtype=np.uint8)
    iters = np.full(n, s.max_iter, dtype=np.int32)
    cand = np.full(n, -1, dtype=np.int64)
    cand_it = np.zeros(n, dtype=np.int32)
    done = np.zeros(n, dtype=bool)

    dist = chordal_array(z[:, None], roots[None, :])
    idx = np.argmin(dist, axis=1)
    best = dist[np.arange(n), idx]
    near = best < s.root_tol
    cand[near] = idx[near]

    active = np.flatnonzero(~done)
    for step in range(1, s.max_iter + 1):
        if active.size == 0:
            break
        za = z[active]
        d = deltas[active]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            pz = za * za * za - 1.0
            dpz = 3.0 * za * za
            nz = za - pz / dpz
            za = nz - d * (nz * nz * nz - 1.0) / dpz
        z[active] = za

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

        active = active[~done[active]]
    return cls, iters


def classify_parameter_cubic(delta: complex, s: IterSettings | None = None):
    """Classify one damping parameter by the two free critical orbits of the
    map for z**3 - 1. Returns a (plus, minus) pair of outcomes."""
    if delta == 0:
        raise ValueError("delta must be nonzero")
    s = s or param_settings()
    d = np.array([complex(delta)])
    rp, rm = _cubic_radicands(d)
    outcomes = []
    for z0 in (_any_cbrt(rp), _any_cbrt(rm)):
        cls, iters = _cubic_kernel(d, z0, s)
        c, it = int(cls[0]), int(iters[0])
        if c == PARAM_OTHER:
            outcomes.append(ParamOutcome("other", None, it))
        else:
            outcomes.append(ParamOutcome("root", c, it))
    return tuple(outcomes)


def render_param_plane(
    kind: str,
    spec: PlaneSpec,
    s: IterSettings | None = None,
    workers: int = 1,
) -> ParamRaster:
    """Per-pixel parameter classification; deterministic under any worker count."""
    if kind not in ("quadratic", "cubic"):
        raise ValueError(f"unknown parameter-plane kind: {kind}")
    s = s or param_settings()
    grid = spec.grid()
    n_orbits = 1 if kind == "quadratic" else 2
    classes = np.empty((n_orbits,) + grid.shape, dtype=np.uint8)
    iters = np.empty((n_orbits,) + grid.shape, dtype=np.int32)

    blocks = [
        slice(r0, min(r0 + _BLOCK_ROWS, spec.px_h)) for r0 in range(0, spec.px_h, _BLOCK_ROWS)
    ]

    def run(block):
        d = grid[block].ravel()
        shape = grid[block].shape
        if kind == "quadratic":
            c, it = _gdelta_kernel(d, _c_plus(d), s)
            return c.reshape((1,) + shape), it.reshape((1,) + shape)
        rp, rm = _cubic_radicands(d)
        cp, itp = _cubic_kernel(d, _any_cbrt(rp), s)
        cm, itm = _cubic_kernel(d, _any_cbrt(rm), s)
        return (
            np.stack([cp.reshape(shape), cm.reshape(shape)]),
            np.stack([itp.reshape(shape), itm.reshape(shape)]),
        )

    if workers <= 1 or len(blocks) == 1:
        results = [run(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))
    for b, (c, it) in zip(blocks, results):
        classes[:, b] = c
        iters[:, b] = it
    return ParamRaster(spec=spec, kind=kind, classes=classes, iters=iters)
