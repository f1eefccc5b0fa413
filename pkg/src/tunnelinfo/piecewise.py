"""Piecewise sums of complex exponentials.

Every wavefunction in this package is, region by region, a short sum
``sum_j c_j exp(s_j x)``: cos/cosh/sinh/decaying tails for the double well and
``sin`` for the infinite well.  That form makes point evaluation, x-derivatives,
overlaps and the Fourier transform all closed-form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SERIES_RADIUS = 0.5
_SERIES_TERMS = 24


def _exprel1(u):
    """(e^u - 1) / u, stable near u = 0."""
    u = np.asarray(u, dtype=complex)
    out = np.empty_like(u)
    small = np.abs(u) < _SERIES_RADIUS
    big = ~small
    out[big] = (np.exp(u[big]) - 1.0) / u[big]
    us = u[small]
    acc = np.zeros_like(us)
    term = np.ones_like(us)        # u^n / (n+1)!
    for n in range(_SERIES_TERMS):
        acc += term
        term = term * us / (n + 2)
    out[small] = acc
    return out


def _exprel2(u):
    """(e^u (u - 1) + 1) / u^2 = sum u^n / (n! (n + 2)), stable near u = 0."""
    u = np.asarray(u, dtype=complex)
    out = np.empty_like(u)
    small = np.abs(u) < _SERIES_RADIUS
    big = ~small
    ub = u[big]
    out[big] = (np.exp(ub) * (ub - 1.0) + 1.0) / (ub * ub)
    us = u[small]
    acc = np.zeros_like(us)
    fact = np.ones_like(us)       # u^n / n!
    for n in range(_SERIES_TERMS):
        acc += fact / (n + 2)
        fact = fact * us / (n + 1)
    out[small] = acc
    return out


def exp_moment_integral(z, lo: float, hi: float, power: int = 0):
    """``int_lo^hi x**power * exp(z x) dx`` for complex ``z`` (array), power 0 or 1.

    ``lo`` may be ``-inf`` (requires Re z > 0) and ``hi`` may be ``+inf``
    (requires Re z < 0).
    """
    z = np.asarray(z, dtype=complex)
    if power not in (0, 1):
        raise ValueError("power must be 0 or 1")
    if math.isinf(lo) and math.isinf(hi):
        raise ValueError("at most one infinite limit")
    if math.isinf(lo):
        e = np.exp(z * hi)
        return e / z if power == 0 else e * (hi / z - 1.0 / (z * z))
    if math.isinf(hi):
        e = np.exp(z * lo)
        return -e / z if power == 0 else -e * (lo / z - 1.0 / (z * z))
    w = hi - lo
    u = z * w
    base = np.exp(z * lo)
    if power == 0:
        return base * w * _exprel1(u)
    return base * (lo * w * _exprel1(u) + w * w * _exprel2(u))


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    coefs: tuple
    rates: tuple


class PiecewiseExp:
    """Real-valued function given on contiguous segments as exponential sums.

    Outside the union of segments the function is zero.  Segment ends are
    shared; a point on an interior boundary is evaluated with the left
    segment (the functions used here are continuous there anyway).
    """

    def __init__(self, segments: Sequence[Segment]):
        self.segments = tuple(segments)
        for s0, s1 in zip(self.segments[:-1], self.segments[1:]):
            if s0.hi != s1.lo:
                raise ValueError("segments must be contiguous")
        self.breakpoints = tuple(s.hi for s in self.segments[:-1])
        self.support = (self.segments[0].lo, self.segments[-1].hi)

    def scaled(self, factor: float) -> "PiecewiseExp":
        return PiecewiseExp([Segment(s.lo, s.hi, tuple(c * factor for c in s.coefs), s.rates)
                             for s in self.segments])

    def _eval(self, x, order):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for i, seg in enumerate(self.segments):
            if i == 0:
                mask = (x >= seg.lo) & (x <= seg.hi)
            else:
                mask = (x > seg.lo) & (x <= seg.hi)
            if not mask.any():
                continue
            xs = x[mask]
            acc = np.zeros(xs.shape, dtype=complex)
            for c, s in zip(seg.coefs, seg.rates):
                acc += c * s ** order * np.exp(s * xs)
            out[mask] = acc
        return out.real

    def __call__(self, x):
        return self._eval(x, 0)

    def derivative(self, x):
        return self._eval(x, 1)

    def one_sided(self, index: int, x: float, order: int = 0) -> float:
        """Value (order 0) or slope (order 1) of segment ``index``'s formula at ``x``."""
        seg = self.segments[index]
        return float(sum(c * s ** order * np.exp(s * x) for c, s in zip(seg.coefs, seg.rates)).real)

    def fourier(self, k, derivative: bool = False):
        """``(2 pi)^-1/2 int u(x) e^{-ikx} dx`` (or its k-derivative), closed form."""
        k = np.asarray(k, dtype=float)
        out = np.zeros(k.shape, dtype=complex)
        power = 1 if derivative else 0
        for seg in self.segments:
            for c, s in zip(seg.coefs, seg.rates):
                term = c * exp_moment_integral(s - 1j * k, seg.lo, seg.hi, power)
                out += -1j * term if derivative else term
        return out / _SQRT_2PI

    def inner(self, other: "PiecewiseExp") -> float:
        """Exact ``int u v dx`` for two functions on the same segmentation."""
        if len(self.segments) != len(other.segments):
            raise ValueError("segmentations differ")
        total = 0.0 + 0.0j
        for sa, sb in zip(self.segments, other.segments):
            if (sa.lo, sa.hi) != (sb.lo, sb.hi):
                raise ValueError("segmentations differ")
            for ca, ra in zip(sa.coefs, sa.rates):
                for cb, rb in zip(sb.coefs, sb.rates):
                    total += ca * cb * complex(exp_moment_integral(np.array([ra + rb]), sa.lo, sa.hi)[0])
        return float(total.real)


def cos_terms(amplitude: float, phase: float, wavenumber: float):
    """``amplitude * cos(phase + wavenumber x)`` as exponential terms."""
    c = 0.5 * amplitude * complex(math.cos(phase), math.sin(phase))
    return (c, c.conjugate()), (1j * wavenumber, -1j * wavenumber)


def cosh_terms(amplitude: float, rate: float):
    return (0.5 * amplitude, 0.5 * amplitude), (rate, -rate)


def sinh_terms(amplitude: float, rate: float):
    return (0.5 * amplitude, -0.5 * amplitude), (rate, -rate)


def sin_terms(amplitude: float, wavenumber: float):
    c = amplitude / 2j
    return (c, -c), (1j * wavenumber, -1j * wavenumber)
