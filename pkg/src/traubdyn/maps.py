"""The damped Traub iteration family and its fixed/critical point structure.

A map in the family applies one Newton step followed by a damped correction:

    T(z) = N(z) - delta * p(N(z)) / p'(z),   N(z) = z - p(z) / p'(z).

delta = 0 is Newton's method, delta = 1 is Traub's method. The module exposes
step evaluation on the sphere, the rational normal form, multipliers at roots
and at infinity, critical point extraction, the conjugate quadratic-family map
g_delta, and closed forms for the degenerate polynomials (z - a)**2 and z**n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .poly import Polynomial, RationalMap, cluster_roots, poly_roots, rational_compose
from .sphere import INF, is_inf

__all__ = [
    "Indeterminate",
    "HypothesisViolated",
    "FixedPointClass",
    "CriticalSet",
    "TraubMap",
    "classify_multiplier",
    "gdelta_map",
    "gdelta_eval",
    "gdelta_critical_points",
]


class Indeterminate(ArithmeticError):
    """p and p' both vanish at a point that is not a cached multiple root."""


class HypothesisViolated(ValueError):
    """Operation requires simple roots and a nonzero damping parameter."""


def classify_multiplier(lam: complex) -> str:
    m = abs(lam)
    if m < 1e-12:
        return "superattracting"
    if m < 1.0:
        return "attracting"
    if m > 1.0:
        return "repelling"
    return "indifferent"


@dataclass(frozen=True)
class FixedPointClass:
    kind: str
    multiplier: complex

    @classmethod
    def from_multiplier(cls, lam: complex) -> "FixedPointClass":
        return cls(classify_multiplier(lam), complex(lam))


@dataclass
class CriticalSet:
    """Critical points of one map, bucketed by what pins them.

    free may contain the point at infinity (as INF) when the degeneracy
    parameter turns infinity into a branch point. Points in at_inflections and
    free are repeated according to multiplicity.
    """

    at_roots: list
    at_poles: list
    at_inflections: list
    free: list
    non_simple_derivative_zeros: bool = False
    map_degree: int = 0

    @property
    def total_multiplicity(self) -> int:
        return (
            sum(k for _, k in self.at_roots)
            + sum(k for _, k in self.at_poles)
            + len(self.at_inflections)
            + len(self.free)
        )


def _degeneracy(d: int) -> float:
    return d**d / (d - 1) ** (d - 1)


class TraubMap:
    """One member of the damped family, bound to a polynomial and delta.

    Immutable after construction; the derivative and the root list (with
    multiplicities) are cached up front so step evaluation and orbit
    classification need no further root solving.
    """

    def __init__(self, p: Polynomial, delta: complex, roots=None, cluster_tol: float = 1e-8):
        if p.degree < 2:
            raise ValueError("polynomial degree must be >= 2")
        self.p = p
        self.dp = p.derivative()
        self.delta = complex(delta)
        self.d = p.degree
        self.scale = float(np.max(np.abs(p.coeffs)))
        if roots is None:
            roots = cluster_roots(poly_roots(p), cluster_tol)
        self.roots = [(complex(r), int(k)) for r, k in roots]
        self._normal_form = None

    @classmethod
    def from_roots(cls, roots, delta: complex, lead: complex = 1.0) -> "TraubMap":
        """Build from a root list (repeats encode multiplicity)."""
        p = Polynomial.from_roots(roots) * lead
        return cls(p, delta, roots=cluster_roots(roots))

    @property
    def root_points(self) -> np.ndarray:
        return np.array([r for r, _ in self.roots], dtype=complex)

    # -- stepping ---------------------------------------------------------

    def _pole_threshold(self, z: complex) -> float:
        return 1e-13 * (1.0 + abs(z)) ** (self.d - 1) * self.scale

    def newton_step(self, z):
        """One Newton step, sphere-safe."""
        if is_inf(z):
            return INF
        z = complex(z)
        if abs(z) > 1e8:
            return RationalMap(Polynomial([0, 1]) * self.dp - self.p, self.dp)(z)
        pz = self.p(z)
        dpz = self.dp(z)
        if abs(dpz) < self._pole_threshold(z):
            if abs(pz) > 1e-10 * self.scale:
                return INF
            return self._resolve_degenerate(z)
        return z - pz / dpz

    def traub_step(self, z):
        """One damped Traub step, sphere-safe; delta = 0 is exactly Newton."""
        if self.delta == 0:
            return self.newton_step(z)
        if is_inf(z):
            return self.normal_form().at_infinity()
        z = complex(z)
        if abs(z) > 1e8:
            return self.normal_form()(z)
        pz = self.p(z)
        dpz = self.dp(z)
        if abs(dpz) < self._pole_threshold(z):
            if abs(pz) > 1e-10 * self.scale:
                return INF
            return self._resolve_degenerate(z)
        n = z - pz / dpz
        if is_inf(n):
            return INF
        return n - self.delta * self.p(n) / dpz

    def _resolve_degenerate(self, z: complex):
        # p and p' both ~0: fine at a cached multiple root (fixed), fatal else
        for r, k in self.roots:
            if k >= 2 and abs(z - r) < 1e-6 * (1.0 + abs(r)):
                return complex(r)
        raise Indeterminate(f"p and p' both vanish near z={z}")

    # -- structure --------------------------------------------------------

    def normal_form(self) -> RationalMap:
        """The map as an unreduced quotient over p'(z)**(d+1).

        Numerator degree is d**2 with leading coefficient
        d**(d+1) - d**d - delta*(d-1)**d for monic p; the leading coefficient
        vanishes exactly at the degeneracy parameter d**d/(d-1)**(d-1).
        """
        if self._normal_form is None:
            x = Polynomial([0, 1.0])
            newton = RationalMap(x * self.dp - self.p, self.dp)
            comp = rational_compose(self.p, newton)  # p(N) = num / p'**d
            dpd = comp.den  # == dp ** d
            num = x * dpd * self.dp - self.p * dpd - self.delta * comp.num
            self._normal_form = RationalMap(num, dpd * self.dp)
        return self._normal_form

    def root_multiplier(self, root: complex, k: int) -> FixedPointClass:
        """Multiplier of a multiplicity-k root as a fixed point (closed form)."""
        if k < 1:
            raise ValueError("multiplicity must be >= 1")
        ratio = (k - 1) / k
        lam = ratio - self.delta * ratio**k / k
        return FixedPointClass.from_multiplier(lam)

    def infinity_class(self):
        """Classification of infinity as a fixed point, or None when not fixed."""
        d = self.d
        c = _degeneracy(d)
        if abs(self.delta - c) < 1e-12 * (1.0 + abs(c)):
            return None
        lam = d ** (d + 1) / ((d - 1) * (d**d - self.delta * (d - 1) ** (d - 1)))
        return FixedPointClass.from_multiplier(lam)

    def infinity_multiplier_fd(self, h: float = 1e-6) -> complex:
        """Derivative at infinity measured in the w = 1/z chart (central difference)."""
        nf = self.normal_form()

        def f(w: float) -> complex:
            val = nf(1.0 / w)
            return 1.0 / val if not is_inf(val) else 0j

        return (f(h) - f(-h)) / (2.0 * h)

    def critical_set(self, cluster_tol: float = 1e-6, anchor_tol: float = 1e-3) -> CriticalSet:
        """Critical points bucketed into root / pole / inflection / free lists.

        Requires all roots of p simple and delta != 0. The derivative factors
        as T' = p'' * B / p'**(d+2) with B a polynomial, so the zeros of B and
        of p'' are bucketed separately: zeros of B lie at roots of p (B there
        equals delta times the numerator of p(N), which vanishes) or are free;
        zeros of p'' are inflection critical points unless they coincide with
        a zero of p', in which case the pole swallows them. Derivative zeros
        of p' of order > 1 are flagged.
        """
        if self.delta == 0:
            raise HypothesisViolated("critical classification needs delta != 0")
        if any(k > 1 for _, k in self.roots):
            raise HypothesisViolated("critical classification needs simple roots")
        d = self.d
        p, dp = self.p, self.dp
        ddp = dp.derivative()
        x = Polynomial([0, 1.0])
        newton = RationalMap(x * dp - p, dp)
        num_a = rational_compose(dp, newton).num  # p'(N) = num_a / p'**(d-1)
        num_b = rational_compose(p, newton).num  # p(N)  = num_b / p'**d
        bracket = (p * dp**d - self.delta * (num_a * p) + self.delta * num_b).trim_small(1e-9)

        # a multiplicity-m zero of p' comes back from the solver split over a
        # ring of radius ~ tol**(1/m); cluster at anchor_tol to re-merge it
        dp_clusters = cluster_roots(poly_roots(dp), anchor_tol) if dp.degree >= 1 else []
        ddp_clusters = cluster_roots(poly_roots(ddp), anchor_tol) if ddp.degree >= 1 else []
        b_clusters = cluster_roots(poly_roots(bracket), cluster_tol) if bracket.degree >= 1 else []

        def match(z, anchors, tol=anchor_tol):
            for a in anchors:
                if abs(z - a) < tol * (1.0 + abs(a)):
                    return a
            return None

        root_pts = [r for r, _ in self.roots]
        dp_pts = [r for r, _ in dp_clusters]

        root_mult: dict[complex, int] = {}
        inflections: list[complex] = []
        free: list[complex] = []
        for z, m in b_clusters:
            # B cannot vanish at a zero of p' (its value there is delta times
            # the d-th power of the leading coefficient times -p, nonzero for
            # simple roots), so no pole absorption is needed here
            root_hit = match(z, root_pts)
            if root_hit is not None:
                root_mult[root_hit] = root_mult.get(root_hit, 0) + m
            else:
                free.extend([z] * m)
        for z, m in ddp_clusters:
            # cluster centroids of exact multiple zeros are accurate, so the
            # coincidence test (e.g. the shared zero of p' and p'' for
            # z**n - c, cancelled by the pole of order (d+2) k) can be tight
            if match(z, dp_pts, tol=1e-5) is not None:
                continue
            root_hit = match(z, root_pts)
            if root_hit is not None:
                root_mult[root_hit] = root_mult.get(root_hit, 0) + m
            else:
                inflections.extend([z] * m)

        # poles of the map: zeros of p' with local degree (d+1)*k, since with
        # simple roots of p the numerator never vanishes at a zero of p'
        # (its value there is -delta * (lead * p)**d != 0) and no reduction
        # occurs at any finite point
        nf = self.normal_form()
        num_t = nf.num.trim_small(1e-9)
        non_simple = any(k > 1 for _, k in dp_clusters)
        at_poles = [(r, (d + 1) * k - 1) for r, k in dp_clusters]

        # reduced degree of the map, and a possible branch point at infinity
        den_t = nf.den.trim_small(1e-9)
        deg_t = max(num_t.degree, den_t.degree)
        inf_mult = abs(num_t.degree - den_t.degree) - 1
        free.extend([INF] * max(0, inf_mult))

        at_roots = [(r, root_mult.get(r, 0)) for r in root_pts]
        return CriticalSet(
            at_roots=at_roots,
            at_poles=at_poles,
            at_inflections=inflections,
            free=free,
            non_simple_derivative_zeros=non_simple,
            map_degree=deg_t,
        )

    def special_form(self, tol: float = 1e-8):
        """Closed affine form (slope, intercept) for degenerate polynomials.

        Detects p = (z - a)**2 and p = z**n; returns None otherwise. For both
        forms the map is T(z) = slope * z + intercept.
        """
        if len(self.roots) != 1:
            return None
        a, k = self.roots[0]
        if k != self.d:
            return None
        n = self.d
        if abs(a) < tol * (1.0 + self.scale):
            slope = ((n - 1) / n) * (1.0 - self.delta * (n - 1) ** (n - 1) / n**n)
            return (complex(slope), 0j)
        if n == 2:
            slope = 0.5 - self.delta / 8.0
            return (complex(slope), a * (0.5 + self.delta / 8.0))
        return None

    def __repr__(self):
        return f"TraubMap(degree={self.d}, delta={self.delta})"


# -- the conjugate quadratic family --------------------------------------


def gdelta_map(delta: complex) -> RationalMap:
    """Degree-4 rational map conjugate to the family on any quadratic
    with distinct roots: z**2 (z**2 + 2z + (1-delta)) / ((1-delta) z**2 + 2z + 1)."""
    delta = complex(delta)
    num = Polynomial([0, 0, 1.0 - delta, 2.0, 1.0])
    den = Polynomial([1.0, 2.0, 1.0 - delta])
    return RationalMap(num, den)


def gdelta_eval(delta: complex, z):
    """Sphere-safe evaluation of the conjugate quadratic-family map."""
    return gdelta_map(delta)(z)


def gdelta_critical_points(delta: complex):
    """The two unpinned critical points (c_plus, c_minus), product 1.

    At delta = 1 the quadratic formula degenerates; the limit values (0, INF)
    are returned instead. The principal square root keeps the labelling
    c_minus < -1 < c_plus < 0 for real delta in (0, 1).
    """
    delta = complex(delta)
    if delta == 0:
        raise ValueError("delta must be nonzero")
    if abs(delta - 1.0) < 1e-12:
        return 0j, INF
    disc = (2.0 + delta) ** 2 - 4.0 * (1.0 - delta) ** 2
    s = cmath.sqrt(disc)
    denom = 2.0 * (1.0 - delta)
    c_plus = (-(2.0 + delta) + s) / denom
    c_minus = (-(2.0 + delta) - s) / denom
    return c_plus, c_minus
