"""Orbit classification, rendering, and the raster topology probes."""

import numpy as np
import pytest

from traubdyn.basins import (
    INFINITY_CLASS,
    OTHER_CLASS,
    BasinRaster,
    ComponentMask,
    IterSettings,
    PlaneSpec,
    RootPixelMisclassified,
    classify_orbit,
    hole_count,
    immediate_basin,
    largest_hole,
    raster_stats,
    render_dynamical_plane,
    unbounded_probe,
)
from traubdyn.maps import TraubMap
from traubdyn.poly import Polynomial

P3 = Polynomial([-1.0, 0, 0, 1.0])


def test_iter_settings_validation():
    with pytest.raises(ValueError):
        IterSettings(max_iter=0)
    with pytest.raises(ValueError):
        IterSettings(root_tol=0.0)


def test_plane_spec_grid_geometry():
    spec = PlaneSpec(center=1.0 + 2.0j, width=4.0, px_w=4, px_h=2)
    g = spec.grid()
    assert g.shape == (2, 4)
    # row 0 is the top of the image
    assert g[0, 0].imag > g[1, 0].imag
    assert abs(g[0, 0] - (-0.5 + 2.5j)) < 1e-14
    assert abs(g[1, 3] - (2.5 + 1.5j)) < 1e-14


def test_plane_spec_pixel_roundtrip(seed=0):
    rng = np.random.default_rng(seed)
    spec = PlaneSpec(center=-0.5 + 0.25j, width=3.0, px_w=37, px_h=23)
    g = spec.grid()
    for _ in range(50):
        row = int(rng.integers(0, 23))
        col = int(rng.integers(0, 37))
        assert spec.pixel_of(g[row, col]) == (row, col)


def test_pixel_of_outside_raises():
    spec = PlaneSpec(center=0j, width=2.0, px_w=10, px_h=10)
    from traubdyn.basins import RootOutsideViewport

    with pytest.raises(RootOutsideViewport):
        spec.pixel_of(5.0 + 0j)


def test_classify_orbit_to_each_root():
    m = TraubMap(P3, 1.0)
    s = IterSettings()
    for i, (r, _) in enumerate(m.roots):
        out = classify_orbit(m, r + 0.05, s)
        # a start near a root may still wander; just require a root outcome
        assert out.kind == "root"
    out = classify_orbit(m, 1.0 + 0j, s)
    assert out.kind == "root" and out.iterations == 0
    assert abs(m.roots[out.root_index][0] - 1.0) < 1e-9


def test_classify_orbit_infinity_when_attracting():
    # delta far outside the boundary circle: infinity attracts
    m = TraubMap(P3, 27.0 / 4.0 + 11.0)
    assert m.infinity_class().kind == "attracting"
    out = classify_orbit(m, 50.0 + 0j, IterSettings())
    assert out.kind == "infinity"


def test_classify_orbit_other_for_cycle():
    # the non-root attractor example: starts in its basin never reach a root
    p = Polynomial([-0.10975, 0.25, -0.439, 1.0])
    m = TraubMap(p, 1.0)
    out = classify_orbit(m, 0.155 + 0j, IterSettings(max_iter=400))
    assert out.kind == "other"


def test_render_shapes_and_stats():
    m = TraubMap(P3, 1.0)
    spec = PlaneSpec(center=0j, width=4.0, px_w=80, px_h=60)
    r = render_dynamical_plane(m, spec, IterSettings(max_iter=200))
    assert r.classes.shape == (60, 80) and r.iters.shape == (60, 80)
    rows = raster_stats(r)
    assert abs(sum(f for _, f, _ in rows) - 1.0) < 1e-12
    assert all(mi >= 0 for _, _, mi in rows)


def test_render_deterministic_across_workers():
    m = TraubMap(P3, 1.0)
    spec = PlaneSpec(center=0j, width=4.0, px_w=97, px_h=101)
    s = IterSettings(max_iter=150)
    ref = render_dynamical_plane(m, spec, s, workers=1)
    for w in (2, 5):
        r = render_dynamical_plane(m, spec, s, workers=w)
        assert np.array_equal(r.classes, ref.classes)
        assert np.array_equal(r.iters, ref.iters)


def test_render_matches_scalar_classification(seed=3):
    m = TraubMap(P3, 0.8)
    spec = PlaneSpec(center=0j, width=4.0, px_w=40, px_h=40)
    s = IterSettings(max_iter=200)
    r = render_dynamical_plane(m, spec, s)
    g = spec.grid()
    rng = np.random.default_rng(seed)
    for _ in range(30):
        i, j = int(rng.integers(0, 40)), int(rng.integers(0, 40))
        out = classify_orbit(m, complex(g[i, j]), s)
        if out.kind == "root":
            assert r.classes[i, j] == out.root_index
            assert r.iters[i, j] == out.iterations
        else:
            assert r.classes[i, j] in (OTHER_CLASS, INFINITY_CLASS)


def test_immediate_basin_smaller_than_class():
    m = TraubMap(P3, 1.0)
    spec = PlaneSpec(center=0j, width=4.0, px_w=400, px_h=400)
    r = render_dynamical_plane(m, spec, IterSettings())
    k = next(i for i, (root, _) in enumerate(m.roots) if abs(root - 1.0) < 1e-9)
    mask = immediate_basin(r, k)
    assert mask.bits.sum() < (r.classes == k).sum()
    assert mask.bits[mask.seed]


def test_immediate_basin_root_pixel_guard():
    m = TraubMap(P3, 1.0)
    spec = PlaneSpec(center=0j, width=4.0, px_w=20, px_h=20)
    r = render_dynamical_plane(m, spec, IterSettings(max_iter=100))
    wrong = np.full_like(r.classes, 1)
    bad = BasinRaster(spec=spec, classes=wrong, iters=r.iters, map=m)
    with pytest.raises(RootPixelMisclassified):
        immediate_basin(bad, 0)


def test_hole_count_synthetic():
    spec = PlaneSpec(center=0j, width=1.0, px_w=9, px_h=9)
    bits = np.zeros((9, 9), dtype=bool)
    bits[1:8, 1:8] = True
    bits[4, 4] = False  # one enclosed pixel
    mask = ComponentMask(spec=spec, bits=bits, seed=(1, 1))
    assert hole_count(mask) == 1
    assert largest_hole(mask) == 1
    bits[4, 4] = True
    assert hole_count(ComponentMask(spec=spec, bits=bits, seed=(1, 1))) == 0


def test_hole_count_diagonal_channel_escapes():
    # an 8-connected complement path through a diagonal gap is not a hole
    spec = PlaneSpec(center=0j, width=1.0, px_w=5, px_h=5)
    bits = np.ones((5, 5), dtype=bool)
    bits[2, 2] = False
    bits[1, 1] = False
    bits[0, 0] = False
    mask = ComponentMask(spec=spec, bits=bits, seed=(4, 4))
    assert hole_count(mask) == 0


def test_unbounded_probe_and_validation():
    m = TraubMap(P3, 1.0)
    assert unbounded_probe(m, 0, [4, 8], px=120) == [True, True]
    with pytest.raises(ValueError):
        unbounded_probe(m, 0, [8, 4], px=120)
