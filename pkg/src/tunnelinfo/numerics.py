"""Numerical kernels: bracketed root finding, adaptive quadrature, quartic
least squares and central differences.

The quadrature routines accept vector-valued integrands.  An integrand maps
an array of abscissae of shape ``(m,)`` to either shape ``(m,)`` or
``(ncomp, m)``; all components share one adaptive panel tree, which is what
makes evaluating a dozen information measures per time sample affordable.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    InsufficientData,
    MaxIterations,
    NoSignChange,
    RankDeficient,
    TailNotNegligible,
    ToleranceNotMet,
)

# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise NoSignChange(f"empty bracket [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0 or not (math.isfinite(self.f_lo) and math.isfinite(self.f_hi)):
            raise NoSignChange(
                f"f({self.lo})={self.f_lo:g} and f({self.hi})={self.f_hi:g} do not enclose a sign change"
            )

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, float(f(lo)), float(f(hi)))


def find_root(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-12,
              max_iter: int = 200) -> float:
    """Brent-style root finder on a sign-changing bracket.

    Inverse quadratic / secant steps are taken while they shrink the bracket
    quickly; whenever three consecutive steps fail to halve it, a bisection
    is forced, so the iteration count is bounded by roughly three times the
    bisection count.  Terminates once the enclosing bracket is no wider than
    ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = float(bracket.lo), float(bracket.hi)
    fa, fb = float(bracket.f_lo), float(bracket.f_hi)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    c, fc = a, fa
    d = e = b - a
    ref_width = abs(b - a)
    stalled = 0
    for _ in range(max_iter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        width = abs(c - b)
        if width <= tol or fb == 0.0:
            return b
        # bisect when interpolation has not halved the bracket for 3 steps
        if width <= 0.5 * ref_width:
            ref_width, stalled = width, 0
        else:
            stalled += 1
        tol1 = 0.5 * tol
        m = 0.5 * (c - b)
        use_bisect = stalled >= 3 or abs(e) < tol1 or abs(fa) <= abs(fb)
        if not use_bisect:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                use_bisect = True
        if use_bisect:
            d = e = m
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += math.copysign(tol1, m)
        fb = float(f(b))
    raise MaxIterations(f"root not bracketed to {tol:g} within {max_iter} iterations")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

# Gauss-Kronrod 7/15 pair on [-1, 1] (abscissae in decreasing order, 0 last).
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG_FULL = np.zeros(15)
_WG_FULL[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureResult:
    value: float | np.ndarray
    est_error: float | np.ndarray
    evaluations: int
    converged: bool = True
    domain: tuple[float, float] = (math.nan, math.nan)
    panels: int = 0

    def __float__(self):
        return float(self.value)


def _panel_rule(f, a, b):
    """Apply G7/K15 on every panel [a_i, b_i]; return (kronrod, gauss, abs) per panel."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(f(x.ravel()))
    ncomp = None
    if y.ndim == 2:
        ncomp = y.shape[0]
        y = y.reshape(ncomp, len(a), 15)
    else:
        y = y.reshape(len(a), 15)
    if not np.all(np.isfinite(y)):
        raise FloatingPointError("integrand returned non-finite values")
    kron = (y @ _WK) * half
    gauss = (y @ _WG_FULL) * half
    absk = (np.abs(y) @ _WK) * np.abs(half)
    return kron, gauss, absk, ncomp


def integrate_panels(f: Callable, edges: Sequence[float], tol: float = 1e-10,
                     rtol: float = 0.0, max_panels: int = 200_000,
                     max_rounds: int = 200) -> QuadratureResult:
    """Globally adaptive G7/K15 quadrature over the partition ``edges``.

    Panel errors are estimated by ``|K15 - G7|``.  Each round bisects the
    panels with the largest errors (relative to the per-component budget
    ``max(tol, rtol * int |f|)``) until the summed error of the untouched
    panels is below half the budget; iteration stops once the total error
    of every component is within budget.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("edges must be strictly increasing with at least two entries")
    a, b = edges[:-1].copy(), edges[1:].copy()
    val, gauss, absv, ncomp = _panel_rule(f, a, b)
    err = np.abs(val - gauss)
    evaluations = 15 * len(a)
    converged = False
    tiny = np.finfo(float).tiny
    for _ in range(max_rounds):
        budget = np.maximum(np.maximum(tol, rtol * absv.sum(axis=-1)), tiny)
        if np.all(err.sum(axis=-1) <= budget):
            converged = True
            break
        score = err / budget[:, None] if ncomp is not None else err / budget
        if ncomp is not None:
            score = score.max(axis=0)
        order = np.argsort(-score, kind="stable")
        remaining = score.sum() - np.cumsum(score[order])
        n_split = int(np.searchsorted(-remaining, -0.5)) + 1
        split = order[:n_split]
        mid = 0.5 * (a[split] + b[split])
        if len(a) + n_split > max_panels or np.any(mid <= a[split]) or np.any(mid >= b[split]):
            break
        ca = np.concatenate([a[split], mid])
        cb = np.concatenate([mid, b[split]])
        cval, cgauss, cabs, _ = _panel_rule(f, ca, cb)
        evaluations += 15 * len(ca)
        keep = np.ones(len(a), dtype=bool)
        keep[split] = False
        a = np.concatenate([a[keep], ca])
        b = np.concatenate([b[keep], cb])
        val = np.concatenate([val[..., keep], cval], axis=-1)
        err = np.concatenate([err[..., keep], np.abs(cval - cgauss)], axis=-1)
        absv = np.concatenate([absv[..., keep], cabs], axis=-1)
    return QuadratureResult(value=val.sum(axis=-1), est_error=err.sum(axis=-1),
                            evaluations=evaluations, converged=converged,
                            domain=(float(edges[0]), float(edges[-1])), panels=len(a))


def panel_edges(a, b, breakpoints=(), initial_panels=1):
    pts = [a] + sorted(float(p) for p in breakpoints if a < p < b) + [b]
    edges = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        edges.extend(np.linspace(lo, hi, initial_panels + 1)[:-1])
    edges.append(b)
    return np.asarray(edges)


def integrate(f: Callable, a: float, b: float, tol: float = 1e-10, *, rtol: float = 0.0,
              breakpoints: Sequence[float] = (), initial_panels: int = 1,
              strict: bool = False, max_panels: int = 200_000) -> QuadratureResult:
    """Adaptive integral of ``f`` over the finite interval ``[a, b]``.

    ``f`` must be vectorized.  When the tolerance cannot be met the best
    estimate is returned with ``converged=False`` (and a warning), or
    :class:`ToleranceNotMet` is raised when ``strict`` is set.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    res = integrate_panels(f, panel_edges(a, b, breakpoints, initial_panels), tol=tol,
                           rtol=rtol, max_panels=max_panels)
    if not res.converged:
        if strict:
            raise ToleranceNotMet(f"quadrature on [{a}, {b}] did not reach tol={tol:g}", res)
        warnings.warn(f"quadrature on [{a:g}, {b:g}] did not reach tol={tol:g}; "
                      f"estimated error {np.max(res.est_error):g}", RuntimeWarning, stacklevel=2)
    return res


def tail_peak(f: Callable, lo: float, hi: float, samples: int = 256) -> float:
    """Largest ``|f|`` (any component) sampled on ``[lo, hi]``."""
    x = np.linspace(lo, hi, samples)
    return float(np.max(np.abs(np.asarray(f(x)))))


def decay_cut(f: Callable, scale: float, threshold: float, growth: float = 1.1,
              max_cut: float | None = None, samples: int = 256) -> float:
    """Smallest ``c = scale * growth**j`` with ``|f| < threshold`` on ``+-[c, 4c]``.

    Intended for power-law or faster decaying envelopes; the window check
    makes the scan robust to oscillatory zeros of ``f``.
    """
    if max_cut is None:
        max_cut = scale * 1e8
    c = scale
    while c <= max_cut:
        peak = max(tail_peak(f, c, 4 * c, samples), tail_peak(f, -4 * c, -c, samples))
        if peak < threshold:
            return c
        c *= growth
    raise TailNotNegligible(f"|f| does not fall below {threshold:g} before {max_cut:g}")


def integrate_line(f: Callable, tail_cut: float, tol: float = 1e-10, *,
                   tail_threshold: float = 1e-12, rtol: float = 0.0,
                   breakpoints: Sequence[float] = (), initial_panels: int = 1,
                   strict: bool = False) -> QuadratureResult:
    """Integral over the real line, truncated to ``[-tail_cut, tail_cut]``.

    The truncation is only accepted if ``|f|`` sampled over the outer 1 % of
    each end stays below ``tail_threshold``.  The truncation point is kept in
    ``result.domain``.
    """
    if tail_cut <= 0:
        raise ValueError("tail_cut must be positive")
    edge = 0.01 * tail_cut
    peak = max(tail_peak(f, tail_cut - edge, tail_cut), tail_peak(f, -tail_cut, -tail_cut + edge))
    if not peak <= tail_threshold:
        raise TailNotNegligible(f"|f| reaches {peak:g} near +-{tail_cut:g} "
                                f"(threshold {tail_threshold:g})")
    return integrate(f, -tail_cut, tail_cut, tol, rtol=rtol, breakpoints=breakpoints,
                     initial_panels=initial_panels, strict=strict)


# ---------------------------------------------------------------------------
# Least squares
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyFit:
    coefficients: np.ndarray          # alpha_0 .. alpha_4, lowest order first
    rmse: float
    domain: tuple[float, float]
    extra: dict = field(default_factory=dict, compare=False)

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)


def fit_quartic(xs, ys) -> PolyFit:
    """Least-squares quartic through ``(xs, ys)``.

    Solved with an SVD-based least-squares solve of the column-scaled
    Vandermonde system, which keeps the conditioning at ``cond(V)`` rather
    than the ``cond(V)**2`` of the normal equations.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-D arrays of equal length")
    if len(xs) < 6:
        raise InsufficientData(f"need at least 6 samples, got {len(xs)}")
    if np.any(np.diff(xs) < 0):
        # repeated abscissae (replicate samples) are allowed, reordering is not
        raise ValueError("xs must be sorted in increasing order")
    if len(np.unique(xs)) < 5:
        raise RankDeficient("fewer than 5 distinct abscissae")
    V = np.vander(xs, 5, increasing=True)
    scale = np.linalg.norm(V, axis=0)
    coef, *_ = np.linalg.lstsq(V / scale, ys, rcond=None)
    coef = coef / scale
    resid = V @ coef - ys
    rmse = float(np.sqrt(np.mean(resid ** 2)))
    return PolyFit(coefficients=coef, rmse=rmse, domain=(float(xs[0]), float(xs[-1])))


# ---------------------------------------------------------------------------
# Differences
# ---------------------------------------------------------------------------


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Symmetric difference ``(f(x+h) - f(x-h)) / 2h``; error is O(h**2 f''')."""
    if h <= 0:
        raise ValueError("h must be positive")
    return (f(x + h) - f(x - h)) / (2.0 * h)
