"""Information measures of one-dimensional densities and their time series.

Continuous measures (nats throughout):

    S = -int f ln f          Shannon (differential) entropy
    I = int f'^2 / f         Fisher information
    D = int f^2              disequilibrium
    H_a = ln(int f^a) / (1 - a)   Renyi entropy
    C = e^S D                LMC complexity (exponential form)

For a superposition state every quantity is evaluated in position and
momentum space; net values combine the two (S_T = S_x + S_k, I_T = I_x I_k,
D_T = D_x D_k, C_T = e^{S_T} D_T).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BoundViolation,
    ConvolutionUnderresolved,
    InvalidOrder,
    NegativeVariance,
    NotNormalized,
    NumericalError,
    ZeroProbabilityTerm,
)
from .numerics import PolyFit, central_diff, fit_quartic, integrate, integrate_panels, panel_edges
from .quantum_state import SuperpositionState

DENSITY_FLOOR = 1e-30
EUR_BOUND = 1.0 + math.log(math.pi)
FISHER_PRODUCT_BOUND = 4.0
HEISENBERG_BOUND = 0.5
NORMALIZATION_TOL = 1e-6
DEFAULT_RENYI_ORDERS = (0.5, 2.0, 3.0)

# Reference quartic coefficients (alpha_0..alpha_4) of the published fits
# over 0 <= omega t <= pi/2 for the ammonia ground pair:
#   S_T = ln(poly(omega t)),  I_T = exp(poly(omega t)).
REFERENCE_FIT_S_T = (8.81379, 0.66905, 8.47152, -7.26716, 1.70397)
REFERENCE_FIT_I_T = (1.40713, 1.35802, 1.99491, -1.90413, 0.48349)


# ---------------------------------------------------------------------------
# Continuous densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Density:
    """A vectorized density ``f`` supported (numerically) on ``[lo, hi]``.

    ``df`` is the analytic derivative when one is available; otherwise Fisher
    information falls back to central differences.
    """
    f: Callable
    lo: float
    hi: float
    breakpoints: tuple = ()
    df: Callable | None = None

    def derivative(self, x):
        if self.df is not None:
            return self.df(x)
        h = 1e-6 * (self.hi - self.lo)
        return central_diff(self.f, np.asarray(x, dtype=float), h)


def _log_guarded(f):
    return np.log(np.maximum(f, DENSITY_FLOOR))


def _entropy_integrand(f):
    return np.where(f > DENSITY_FLOOR, -f * _log_guarded(f), 0.0)


def _fisher_integrand(f, df):
    return np.where(f > DENSITY_FLOOR, df * df / np.maximum(f, DENSITY_FLOOR), 0.0)


def _integral(d: Density, g: Callable, rtol: float = 1e-11) -> float:
    res = integrate(g, d.lo, d.hi, 0.0, rtol=rtol, breakpoints=d.breakpoints, initial_panels=8)
    return float(res.value)


def _check_normalized(d: Density):
    total = _integral(d, d.f)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"density integrates to {total:.9g}")


def shannon_continuous(d: Density) -> float:
    """Differential entropy ``-int f ln f`` in nats; ``f ln f -> 0`` where f vanishes."""
    _check_normalized(d)
    return _integral(d, lambda x: _entropy_integrand(d.f(x)))


def fisher_continuous(d: Density) -> float:
    """``int f'^2 / f``; points below the density floor contribute nothing."""
    _check_normalized(d)
    return _integral(d, lambda x: _fisher_integrand(d.f(x), d.derivative(x)))


def disequilibrium_continuous(d: Density) -> float:
    return _integral(d, lambda x: d.f(x) ** 2)


@dataclass(frozen=True)
class MomentSet:
    mean_x: float
    mean_x2: float
    mean_k: float
    mean_k2: float

    def __post_init__(self):
        if self.var_x <= 0 or self.var_k <= 0:
            raise NegativeVariance(f"variances x={self.var_x:g}, k={self.var_k:g}")

    @property
    def var_x(self):
        return self.mean_x2 - self.mean_x ** 2

    @property
    def var_k(self):
        return self.mean_k2 - self.mean_k ** 2

    @property
    def dx(self):
        return math.sqrt(self.var_x)

    @property
    def dk(self):
        return math.sqrt(self.var_k)

    @property
    def product(self):
        return self.dx * self.dk


def uncertainty_product(rho: Density, n: Density | None = None, *, mean_k: float | None = None,
                        mean_k2: float | None = None) -> MomentSet:
    """First and second moments in both spaces.

    Momentum moments come from ``n`` unless given explicitly; for wavefunctions
    with kinks (slowly decaying ``n``) pass ``<k>``, ``<k^2>`` computed from
    ``psi'`` in position space instead.
    """
    mx = _integral(rho, lambda x: x * rho.f(x))
    mx2 = _integral(rho, lambda x: x * x * rho.f(x))
    if mean_k is None or mean_k2 is None:
        if n is None:
            raise ValueError("need a momentum density or explicit momentum moments")
        mean_k = _integral(n, lambda k: k * n.f(k))
        mean_k2 = _integral(n, lambda k: k * k * n.f(k))
    ms = MomentSet(mx, mx2, mean_k, mean_k2)
    if ms.product < HEISENBERG_BOUND * (1 - 1e-12):
        raise BoundViolation(f"dx dk = {ms.product:.12g} < 1/2")
    return ms


# ---------------------------------------------------------------------------
# Discrete distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteDist:
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or len(p) == 0:
            raise ValueError("p must be a non-empty 1-D array")
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise NotNormalized(f"probabilities sum to {p.sum():.15g}")
        object.__setattr__(self, "p", p)

    @property
    def n(self):
        return len(self.p)


def shannon_discrete(d: DiscreteDist, base: float = math.e) -> float:
    p = d.p[d.p > 0]
    return float(-(p * np.log(p)).sum() / math.log(base))


def fisher_discrete(d: DiscreteDist) -> float:
    """``sum_{i=1}^{N-1} (p_{i+1} - p_i)^2 / p_i`` (no wrap-around term)."""
    p = d.p
    diff = np.diff(p)
    head = p[:-1]
    if np.any((head == 0) & (diff != 0)):
        raise ZeroProbabilityTerm("p_i = 0 under a nonzero difference")
    ok = head > 0
    return float((diff[ok] ** 2 / head[ok]).sum())


def disequilibrium_discrete(d: DiscreteDist) -> float:
    """Distance from equiprobability ``sum (p_i - 1/N)^2``."""
    return float(((d.p - 1.0 / d.n) ** 2).sum())


def lmc_measures(s: float, d: float, kind: str = "exp") -> float:
    """LMC complexity from entropy and disequilibrium: ``e^S D`` or ``S D``."""
    if kind == "exp":
        return math.exp(s) * d
    if kind == "product":
        return s * d
    raise ValueError(f"unknown kind {kind!r}")


def lmc_discrete(d: DiscreteDist, base: float = math.e) -> float:
    return shannon_discrete(d, base) * disequilibrium_discrete(d)


def lmc_near_equilibrium(s: float, n: int, s_max: float | None = None) -> float:
    """Second-order estimate ``(2/N) S (S_max - S)`` valid close to equiprobability."""
    if s_max is None:
        s_max = math.log(n)
    return 2.0 / n * s * (s_max - s)


def renyi(dist, a: float) -> float:
    """Renyi entropy of order ``a`` (nats) of a :class:`DiscreteDist` or :class:`Density`."""
    if not (a > 0) or a == 1:
        raise InvalidOrder(f"order must be positive and != 1, got {a}")
    if isinstance(dist, DiscreteDist):
        p = dist.p[dist.p > 0]
        return float(math.log((p ** a).sum()) / (1.0 - a))
    if isinstance(dist, Density):
        total = _integral(dist, lambda x: np.maximum(dist.f(x), 0.0) ** a)
        return math.log(total) / (1.0 - a)
    raise TypeError(f"unsupported distribution type {type(dist).__name__}")


# ---------------------------------------------------------------------------
# de Bruijn identity
# ---------------------------------------------------------------------------


def _trapz_entropy(values, h):
    return float(np.trapezoid(_entropy_integrand(values), dx=h))


def debruijn_check(d: Density, i_f: float, t_step: float, points_per_sigma: int = 10,
                   max_points: int = 5_000_000) -> float:
    """Relative error of the one-sided estimate of ``dS/dt`` at ``t = 0+``
    against ``I / 2``, where ``S(t)`` is the entropy of ``f`` smoothed by a
    centred Gaussian of variance ``t``.

    Both entropies are taken on the same uniform grid (spacing
    ``sqrt(t_step) / points_per_sigma``) so discretization errors largely
    cancel in the difference.
    """
    if t_step <= 0:
        raise ValueError("t_step must be positive")
    if points_per_sigma < 4:
        raise ConvolutionUnderresolved("need at least 4 grid points per kernel sigma")
    sigma = math.sqrt(t_step)
    h = sigma / points_per_sigma
    pad = 10.0 * sigma
    n_pts = int(math.ceil((d.hi - d.lo + 2 * pad) / h)) + 1
    if n_pts > max_points:
        raise ConvolutionUnderresolved(f"grid of {n_pts} points exceeds {max_points}")
    x = d.lo - pad + h * np.arange(n_pts)
    inside = (x >= d.lo) & (x <= d.hi)
    f = np.where(inside, d.f(np.clip(x, d.lo, d.hi)), 0.0)
    y = h * np.arange(-10 * points_per_sigma, 10 * points_per_sigma + 1)
    kernel = np.exp(-0.5 * (y / sigma) ** 2)
    kernel /= kernel.sum()
    smoothed = np.convolve(f, kernel, mode="same")
    rate = (_trapz_entropy(smoothed, h) - _trapz_entropy(f, h)) / t_step
    return abs(rate - 0.5 * i_f) / (0.5 * i_f)


# ---------------------------------------------------------------------------
# Time series for a superposition state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureRecord:
    t_over_T: float
    mean_x: float
    mean_k: float
    var_x: float
    var_k: float
    dx: float
    dk: float
    dx_dk: float
    s_x: float
    s_k: float
    s_t: float
    i_x: float
    i_k: float
    i_t: float
    d_x: float
    d_k: float
    d_t: float
    c_t: float
    norm_x: float
    norm_k: float
    renyi: dict = field(default_factory=dict)   # a -> (H_a position, H_a momentum)

    def violations(self) -> list[str]:
        out = []
        if not self.s_t >= EUR_BOUND:
            out.append(f"S_T={self.s_t:.9g} < 1+ln(pi)")
        if not self.i_t >= FISHER_PRODUCT_BOUND:
            out.append(f"I_T={self.i_t:.9g} < 4")
        if not self.dx_dk >= HEISENBERG_BOUND:
            out.append(f"dx*dk={self.dx_dk:.9g} < 1/2")
        if not self.i_x * self.var_x >= 1.0:
            out.append(f"I_x*Var_x={self.i_x * self.var_x:.9g} < 1")
        if not self.i_k * self.var_k >= 1.0:
            out.append(f"I_k*Var_k={self.i_k * self.var_k:.9g} < 1")
        return out


def _powers(f, orders):
    return [np.maximum(f, 0.0) ** a for a in orders]


def measure_record(s: SuperpositionState, t_over_T: float,
                   renyi_orders: Sequence[float] = DEFAULT_RENYI_ORDERS, *,
                   rtol: float = 1e-10, initial_panels: int = 40,
                   length_unit: float = 1.0) -> MeasureRecord:
    """All measures at ``t = t_over_T * T``.

    Lengths are expressed in multiples of ``length_unit`` metres (momenta in
    its inverse).  Position and momentum integrals each run as one
    vector-valued adaptive quadrature; ``<k>`` and ``<k^2>`` are taken from
    ``psi'`` in position space, which stays exact when ``n(k)`` decays slowly.
    """
    for a in renyi_orders:
        if not (a > 0) or a == 1:
            raise InvalidOrder(f"order must be positive and != 1, got {a}")
    u = float(length_unit)
    ph = s.sign * s.relative_phase(t_over_T * s.period) / math.sqrt(2.0)
    ua, ub = s.u_a, s.u_b
    rt_u = math.sqrt(u)

    def position_terms(xs):
        x = xs * u
        amp = rt_u * (ua(x) / math.sqrt(2.0) + ph * ub(x))
        damp = u * rt_u * (ua.derivative(x) / math.sqrt(2.0) + ph * ub.derivative(x))
        rho = amp.real ** 2 + amp.imag ** 2
        cross = np.conj(amp) * damp
        drho = 2.0 * cross.real
        return np.stack([rho, xs * rho, xs * xs * rho, _entropy_integrand(rho),
                         _fisher_integrand(rho, drho), rho * rho,
                         damp.real ** 2 + damp.imag ** 2, cross.imag,
                         *_powers(rho, renyi_orders)])

    def momentum_terms(ks):
        k = ks / u
        amp = (ua.fourier(k) / math.sqrt(2.0) + ph * ub.fourier(k)) / rt_u
        damp = (ua.fourier(k, True) / math.sqrt(2.0) + ph * ub.fourier(k, True)) / (u * rt_u)
        n = amp.real ** 2 + amp.imag ** 2
        dn = 2.0 * (np.conj(amp) * damp).real
        return np.stack([n, _entropy_integrand(n), _fisher_integrand(n, dn), n * n,
                         *_powers(n, renyi_orders)])

    lo, hi = s.position_support()
    xedges = panel_edges(lo / u, hi / u, [b / u for b in s.breakpoints], initial_panels)
    kc = s.k_cut * u
    kedges = panel_edges(-kc, kc, [0.0], initial_panels)
    px = integrate_panels(position_terms, xedges, tol=0.0, rtol=rtol)
    pk = integrate_panels(momentum_terms, kedges, tol=0.0, rtol=rtol)
    if not (px.converged and pk.converged):
        raise NumericalError(f"measure quadrature did not converge at t/T={t_over_T}")
    vx, vk = px.value, pk.value
    mean_x, mean_x2 = vx[1], vx[2]
    mean_k, mean_k2 = vx[7], vx[6]
    var_x = mean_x2 - mean_x ** 2
    var_k = mean_k2 - mean_k ** 2
    if var_x <= 0 or var_k <= 0:
        raise NegativeVariance(f"t/T={t_over_T}: var_x={var_x:g}, var_k={var_k:g}")
    s_x, s_k = float(vx[3]), float(vk[1])
    i_x, i_k = float(vx[4]), float(vk[2])
    d_x, d_k = float(vx[5]), float(vk[3])
    s_t, d_t = s_x + s_k, d_x * d_k
    ren = {}
    for j, a in enumerate(renyi_orders):
        ren[float(a)] = (math.log(vx[8 + j]) / (1.0 - a), math.log(vk[4 + j]) / (1.0 - a))
    dx, dk = math.sqrt(var_x), math.sqrt(var_k)
    return MeasureRecord(
        t_over_T=float(t_over_T), mean_x=float(mean_x), mean_k=float(mean_k),
        var_x=float(var_x), var_k=float(var_k), dx=dx, dk=dk, dx_dk=dx * dk,
        s_x=s_x, s_k=s_k, s_t=s_t, i_x=i_x, i_k=i_k, i_t=i_x * i_k,
        d_x=d_x, d_k=d_k, d_t=d_t, c_t=math.exp(s_t) * d_t,
        norm_x=float(vx[0]), norm_k=float(vk[0]), renyi=ren)


def measure_series(s: SuperpositionState, n_times: int = 65,
                   renyi_orders: Sequence[float] = DEFAULT_RENYI_ORDERS, *,
                   enforce: bool = True, **kwargs) -> list[MeasureRecord]:
    """Records at ``t = j T / (n_times - 1)``, ``j = 0 .. n_times - 1``.

    With ``enforce`` set, any breached lower bound raises :class:`BoundViolation`.
    """
    if n_times < 8:
        raise ValueError(f"n_times must be >= 8, got {n_times}")
    records = []
    for j in range(n_times):
        rec = measure_record(s, j / (n_times - 1), renyi_orders, **kwargs)
        if enforce:
            bad = rec.violations()
            if bad:
                raise BoundViolation(f"t/T={rec.t_over_T:.6g}: " + "; ".join(bad))
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# Fits and extrema
# ---------------------------------------------------------------------------


def fit_measures(records: Sequence[MeasureRecord], omega_t_max: float = math.pi / 2):
    """Quartic fits ``S_T = ln(poly(wt))`` and ``I_T = exp(poly(wt))`` on ``0 <= wt <= omega_t_max``.

    Returns ``(fit_s, fit_i)``.  ``fit.rmse`` is in the fitted (transformed)
    variable; ``fit.extra`` carries the rmse and range of the measure itself.
    """
    wt = np.array([2.0 * math.pi * r.t_over_T for r in records])
    keep = wt <= omega_t_max * (1 + 1e-12)
    xs = wt[keep]
    s_t = np.array([r.s_t for r in records])[keep]
    i_t = np.array([r.i_t for r in records])[keep]
    fit_s = fit_quartic(xs, np.exp(s_t))
    fit_i = fit_quartic(xs, np.log(i_t))
    out = []
    for fit, y, back in ((fit_s, s_t, np.log), (fit_i, i_t, np.exp)):
        pred = back(fit(xs))
        rmse = float(np.sqrt(np.mean((pred - y) ** 2)))
        fit.extra.update(rmse_measure=rmse, measure_range=float(np.ptp(y)), n_samples=len(xs))
        out.append(fit)
    return tuple(out)


def local_extrema(values, kind: str = "max") -> list[int]:
    """Indices of local maxima (``kind='max'``) or minima, endpoints included."""
    v = np.asarray(values, dtype=float)
    if kind == "min":
        v = -v
    elif kind != "max":
        raise ValueError("kind must be 'max' or 'min'")
    idx = []
    if len(v) > 1 and v[0] > v[1]:
        idx.append(0)
    for i in range(1, len(v) - 1):
        if v[i] > v[i - 1] and v[i] >= v[i + 1]:
            idx.append(i)
    if len(v) > 1 and v[-1] > v[-2]:
        idx.append(len(v) - 1)
    return idx
