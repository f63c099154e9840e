"""Dense complex polynomial algebra and rational maps.

Coefficients are stored in ascending degree order: coeffs[k] multiplies z**k.
Degrees stay small at desk scale (<= ~100), so dense numpy arrays are used
throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sphere import INF, is_inf

__all__ = [
    "NonConvergence",
    "Polynomial",
    "RationalMap",
    "poly_roots",
    "cluster_roots",
    "rational_compose",
]


class NonConvergence(RuntimeError):
    """Simultaneous root iteration exhausted its sweep budget."""


def _trim_exact(c: np.ndarray) -> np.ndarray:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _horner(coeffs, z):
    """Evaluate ascending coefficients at z (scalar or array), no trimming."""
    if len(coeffs) == 0:
        return np.zeros_like(z) if isinstance(z, np.ndarray) else 0j
    if isinstance(z, np.ndarray):
        acc = np.full(z.shape, coeffs[-1], dtype=complex)
        for c in coeffs[-2::-1]:
            acc = acc * z + c
        return acc
    acc = complex(coeffs[-1])
    z = complex(z)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


class Polynomial:
    """Complex polynomial with ascending coefficients.

    The zero polynomial is represented by an empty coefficient array and has
    degree -1 by convention.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        self.coeffs = _trim_exact(c)

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        p = cls([1.0])
        for r in roots:
            p = p * cls([-complex(r), 1.0])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __call__(self, z):
        return _horner(self.coeffs, z)

    def derivative(self) -> "Polynomial":
        if self.degree < 1:
            return Polynomial()
        return Polynomial(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def trim_small(self, rel: float = 1e-9) -> "Polynomial":
        """Drop leading coefficients below rel * max|coeff| (degeneracy cleanup)."""
        if self.is_zero():
            return self
        thr = rel * np.max(np.abs(self.coeffs))
        c = self.coeffs.copy()
        n = len(c)
        while n and abs(c[n - 1]) <= thr:
            n -= 1
        return Polynomial(c[:n])

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] += b
        return Polynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Polynomial(self.coeffs * other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial([1.0])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Polynomial) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


def cluster_roots(points, tol: float = 1e-8):
    """Greedy clustering of near-coincident points.

    Returns a list of (centroid, count) pairs, in first-seen order.
    """
    centers: list[complex] = []
    members: list[list[complex]] = []
    for z in points:
        z = complex(z)
        for i, c in enumerate(centers):
            if abs(z - c) < tol:
                members[i].append(z)
                centers[i] = sum(members[i]) / len(members[i])
                break
        else:
            centers.append(z)
            members.append([z])
    return [(centers[i], len(members[i])) for i in range(len(centers))]


def poly_roots(p: Polynomial, max_sweeps: int = 200):
    """All roots of p (with multiplicity) by Aberth-Ehrlich simultaneous iteration.

    Initial guesses sit on a circle of radius 1 + max|a_k| of the monic
    normalization, with a fixed angular offset so the start never aligns with
    real-axis symmetry. Each returned root satisfies
    |p(root)| <= 1e-10 * max|coeff|; multiple roots come back as tight clusters.
    """
    d = p.degree
    if d < 1:
        raise ValueError("poly_roots requires degree >= 1")
    lead = p.coeffs[-1]
    a = p.coeffs / lead
    if d == 1:
        return [complex(-a[0])]
    scale = float(np.max(np.abs(p.coeffs)))
    tol_res = 1e-10 * scale / abs(lead)
    mon = Polynomial(a)
    dmon = mon.derivative()
    radius = 1.0 + float(np.max(np.abs(a[:-1])))
    k = np.arange(d)
    z = radius * np.exp(1j * (2.0 * np.pi * k / d + 0.4))
    for _ in range(max_sweeps):
        pv = mon(z)
        if np.all(np.abs(pv) <= tol_res):
            return [complex(x) for x in z]
        dv = dmon(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            srec = np.sum(1.0 / diff, axis=1)
            w = newton / (1.0 - newton * srec)
        bad = ~np.isfinite(w)
        if np.any(bad):
            # landed on a derivative zero; nudge and retry next sweep
            w = np.where(bad, 0.0, w)
            z = np.where(bad, z * (1.0 + 1e-6) + 1e-6, z)
        z = z - w
        if np.max(np.abs(w)) < 1e-15 * (1.0 + np.max(np.abs(z))):
            break
    if np.all(np.abs(mon(z)) <= tol_res):
        return [complex(x) for x in z]
    raise NonConvergence(f"Aberth iteration did not converge after {max_sweeps} sweeps")


@dataclass(frozen=True)
class RationalMap:
    """Quotient of two polynomials, evaluated sphere-safely."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ValueError("denominator must be nonzero")

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def at_infinity(self, rel: float = 1e-9):
        """Value at the point at infinity (INF, 0, or the leading ratio)."""
        num = self.num.trim_small(rel)
        den = self.den.trim_small(rel)
        if num.is_zero():
            return 0j
        dn, dd = num.degree, den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return 0j
        return complex(num.coeffs[-1] / den.coeffs[-1])

    def __call__(self, z):
        if isinstance(z, np.ndarray):
            with np.errstate(divide="ignore", invalid="ignore"):
                return self.num(z) / self.den(z)
        z = complex(z)
        if is_inf(z):
            return self.at_infinity()
        if abs(z) > 1e8:
            # evaluate in the w = 1/z chart to avoid overflow
            w = 1.0 / z
            nv = _horner(self.num.coeffs[::-1], w)
            dv = _horner(self.den.coeffs[::-1], w)
            if dv == 0:
                return INF
            return (nv / dv) * z ** (self.num.degree - self.den.degree)
        nv = self.num(z)
        dv = self.den(z)
        if dv == 0:
            if nv != 0:
                return INF
            # removable singularity: differentiate until the denominator moves
            n, d = self.num, self.den
            for _ in range(self.den.degree + 1):
                n, d = n.derivative(), d.derivative()
                dvv = d(z)
                if dvv != 0:
                    return n(z) / dvv
            return INF
        return nv / dv

    def reduced(self, tol: float = 1e-8) -> "RationalMap":
        """Cancel common roots of num and den (clustering tolerance tol)."""
        if self.num.is_zero() or self.num.degree < 1 or self.den.degree < 1:
            return self
        nroots = poly_roots(self.num)
        droots = poly_roots(self.den)
        used = [False] * len(droots)
        keep_n = []
        cancelled_d: list[complex] = []
        for r in nroots:
            hit = False
            for j, s in enumerate(droots):
                if not used[j] and abs(r - s) < tol:
                    used[j] = True
                    cancelled_d.append(s)
                    hit = True
                    break
            if not hit:
                keep_n.append(r)
        if not cancelled_d:
            return self
        keep_d = [s for j, s in enumerate(droots) if not used[j]]
        num = Polynomial.from_roots(keep_n) * self.num.coeffs[-1]
        den = Polynomial.from_roots(keep_d) * self.den.coeffs[-1]
        return RationalMap(num, den)


def rational_compose(p: Polynomial, inner: RationalMap) -> RationalMap:
    """p(inner.num / inner.den) as a rational map with den = inner.den ** deg p.

    The numerator accumulates by Horner over polynomials:
    acc = acc * num + coeffs[k] * den ** (d - k).
    """
    d = p.degree
    if d < 1:
        c = 0j if p.is_zero() else complex(p.coeffs[0])
        return RationalMap(Polynomial([c]), Polynomial([1.0]))
    acc = Polynomial([p.coeffs[d]])
    den_pow = Polynomial([1.0])
    for k in range(d - 1, -1, -1):
        den_pow = den_pow * inner.den
        acc = acc * inner.num + den_pow * complex(p.coeffs[k])
    return RationalMap(acc, den_pow)
