"""Floating-point check of the Laplace expansion.

The integral of ``exp(-n f_N(x)) b_N(x)`` over the box ``[-R, R]^d`` is
computed with tensor Gauss-Legendre rules, doubling the number of nodes
until two successive values agree.  ``f_N``, ``b_N`` are the jets read as
polynomials; they need not be integrable on all of ``R^d``, so the box is
chosen from the quadratic lower bound

    f_N(x) >= kappa * lambda_min / 2 * |x|^2     on the box,

which is checked on the quadrature nodes and makes the discarded tail at
most ``exp(-tail)`` relative to the Gaussian mass.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonCoercive, PhylonError
from .invariants import invariant_sequence


@dataclass(frozen=True)
class QuadratureConfig:
    points: int = 48
    radius: Optional[float] = None
    tol: float = 1e-12
    max_points: int = 768
    tail: float = 40.0
    kappa: float = 0.5
    chunk: int = 1 << 15


@dataclass
class QuadratureReport:
    n_values: list
    partial_order: int
    numeric_integrals: list
    series_values: list
    residuals: list
    fitted_slope: float
    details: dict = field(default_factory=dict)

    def to_json(self):
        r = lambda xs: [repr(float(x)) for x in xs]
        return {
            "n_values": r(self.n_values),
            "partial_order": self.partial_order,
            "numeric_integrals": r(self.numeric_integrals),
            "series_values": r(self.series_values),
            "residuals": r(self.residuals),
            "fitted_slope": repr(float(self.fitted_slope)),
        }


class _Poly:
    """A truncated series evaluated as a polynomial at many points."""

    def __init__(self, series):
        terms = [(a, float(c)) for a, c in series.terms()]
        self.exps = np.array([a for a, _ in terms], dtype=np.int64).reshape(len(terms), series.dim)
        self.coeffs = np.array([c for _, c in terms], dtype=float)

    def __call__(self, pts):
        if not len(self.coeffs):
            return np.zeros(len(pts))
        mono = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
        return mono @ self.coeffs


def _min_eig(pair):
    h = np.array([[float(x) for x in row] for row in pair.hessian()])
    return float(np.linalg.eigvalsh(h)[0])


def auto_radius(pair, n, cfg=QuadratureConfig()):
    lam = _min_eig(pair)
    return math.sqrt(2.0 * cfg.tail / (n * cfg.kappa * lam))


def _grid(d, p, radius):
    x, w = np.polynomial.legendre.leggauss(p)
    x = x * radius
    w = w * radius
    mesh = np.meshgrid(*([x] * d), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    wmesh = np.meshgrid(*([w] * d), indexing="ij")
    wts = np.prod(np.stack([m.ravel() for m in wmesh], axis=1), axis=1)
    return pts, wts


def _integrate(fp, bp, n, d, p, radius, bound, cfg):
    pts, wts = _grid(d, p, radius)
    total = 0.0
    for s in range(0, len(pts), cfg.chunk):
        chunk = pts[s:s + cfg.chunk]
        fv = fp(chunk)
        r2 = np.einsum("ij,ij->i", chunk, chunk)
        if np.any(fv < bound * r2 - 1e-12 * (1 + r2)):
            raise NonCoercive(
                f"polynomial f falls below {bound:.3g}*|x|^2 on the box of radius {radius:.3g}")
        total += float(np.dot(wts[s:s + cfg.chunk], np.exp(-n * fv) * bp(chunk)))
    return total


def laplace_integral_numeric(pair, n, cfg=QuadratureConfig()):
    """Numeric ``int_{[-R,R]^d} exp(-n f_N) b_N dx``."""
    d = pair.dim
    if d > 3:
        raise PhylonError("numeric quadrature supports dim <= 3")
    if n <= 0:
        raise ValueError("n must be positive")
    radius = cfg.radius if cfg.radius is not None else auto_radius(pair, n, cfg)
    bound = cfg.kappa * _min_eig(pair) / 2.0
    fp, bp = _Poly(pair.f), _Poly(pair.b)
    cap = cfg.max_points if d < 3 else min(cfg.max_points, 192)
    p = min(cfg.points, cap)
    prev = _integrate(fp, bp, n, d, p, radius, bound, cfg)
    while 2 * p <= cap:
        p *= 2
        cur = _integrate(fp, bp, n, d, p, radius, bound, cfg)
        if abs(cur - prev) <= cfg.tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    return prev


def fitted_slope(n_values, residuals):
    """Decay rate ``-d log|r| / d log n`` by least squares."""
    x = np.log(np.asarray(n_values, dtype=float))
    y = np.log(np.abs(np.asarray(residuals, dtype=float)))
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)


def compare_expansion(pair, orders, n_values, cfg=QuadratureConfig()):
    """Residuals ``n^{d/2} I(n) - sum_{i <= K} L_i n^{-i/2}`` and their decay rate."""
    seq = invariant_sequence(pair, orders)
    lam = [v.value() for v in seq.values]
    d = pair.dim
    ints, series, res = [], [], []
    for n in n_values:
        val = laplace_integral_numeric(pair, n, cfg)
        s = sum(l * n ** (-i / 2) for i, l in enumerate(lam))
        ints.append(val)
        series.append(s)
        res.append(n ** (d / 2) * val - s)
    slope = fitted_slope(n_values, res) if all(res) else float("inf")
    return QuadratureReport(list(n_values), orders, ints, series, res, slope)
