"""Bound states of the double square well (sub-barrier window) and of the
infinite square well.

For ``-V0 < E < -V1`` the even/odd eigenfunctions are

    x <= -L0        A1 exp(gamma x)
    -L0..-L1        A2 cos(phi - k0 x)
    |x| <= L1       A3 cosh(q x)      or   B3 sinh(q x)
    L1..L0          +-A2 cos(phi + k0 x)
    x >= L0         +-A1 exp(-gamma x)

with ``q = |k1|``.  Smoothness at ``L0`` fixes the phase,
``tan(phi + k0 L0) = gamma / k0``; smoothness at ``L1`` then gives one scalar
condition in E whose zeros are the eigenenergies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import InvalidIndex, NoStatesFound, NotNormalizable, NumericalError, OutOfWindow
from .numerics import Bracket, find_root, integrate
from .piecewise import PiecewiseExp, Segment, cos_terms, cosh_terms, sin_terms, sinh_terms
from .potentials import DEFAULT_CONSTANTS, EV, DswpParams, IswpParams, PhysicalConstants

Parity = Literal["even", "odd"]

MATCH_RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class Wavenumbers:
    gamma: float          # m^-1, outer decay
    k0: float             # m^-1, oscillation in the wells
    k1_sq_signed: float   # m^-2, negative under the barrier

    @property
    def k1_abs(self) -> float:
        return math.sqrt(abs(self.k1_sq_signed))


@dataclass(frozen=True)
class MatchResidual:
    at_l1: float
    at_l0: float

    @property
    def worst(self) -> float:
        return max(self.at_l1, self.at_l0)


@dataclass(frozen=True)
class EigenState:
    energy: float                 # eV
    parity: Parity
    phase: float                  # rad, in [0, pi)
    a1: float                     # 1 before normalization
    a2: float
    a3_or_b3: float
    norm: float                   # m^-1/2, multiplies a1..a3
    node_count: int
    wavenumbers: Wavenumbers
    residual: MatchResidual

    @property
    def energy_j(self) -> float:
        return self.energy * EV

    @property
    def label(self) -> str:
        return f"{self.node_count}{'S' if self.parity == 'even' else 'A'}"


def wavenumbers(p: DswpParams, energy_ev: float,
                constants: PhysicalConstants = DEFAULT_CONSTANTS) -> Wavenumbers:
    e = energy_ev * EV
    s = constants.kinetic_scale
    return Wavenumbers(gamma=math.sqrt(-s * e), k0=math.sqrt(s * (e + p.v0_j)),
                       k1_sq_signed=s * (e + p.v1_j))


def _raw_phase(wn: Wavenumbers, l0: float) -> float:
    # continuous in E; reduced to [0, pi) only for reporting
    return math.atan2(wn.gamma, wn.k0) - wn.k0 * l0


def _barrier_logderiv(q: float, l1: float, parity: Parity) -> float:
    if parity == "even":
        return q * math.tanh(q * l1)
    if q * l1 < 1e-8:
        return 1.0 / l1
    return q / math.tanh(q * l1)


def matching_function(p: DswpParams, parity: Parity, energy_ev: float,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Dimensionless smoothness mismatch at ``x = L1``; zero at eigenenergies.

    The condition ``Q = -k0 tan(phi + k0 L1)`` (``Q`` the barrier
    log-derivative, ``q tanh`` or ``q coth``) is multiplied through by the
    cosine and divided by ``hypot(Q, k0)``, which leaves a bounded function
    of E without poles.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not (-p.v0 < energy_ev < -p.v1):
        raise OutOfWindow(f"E={energy_ev} eV outside ({-p.v0}, {-p.v1})")
    wn = wavenumbers(p, energy_ev, constants)
    theta = _raw_phase(wn, p.l0_m) + wn.k0 * p.l1_m
    big_q = _barrier_logderiv(wn.k1_abs, p.l1_m, parity)
    return (big_q * math.cos(theta) + wn.k0 * math.sin(theta)) / math.hypot(big_q, wn.k0)


def _segments(p: DswpParams, parity: Parity, wn: Wavenumbers, phase: float,
              a1: float, a2: float, a3: float) -> list[Segment]:
    l0, l1 = p.l0_m, p.l1_m
    q, k0, g = wn.k1_abs, wn.k0, wn.gamma
    sgn = 1.0 if parity == "even" else -1.0
    mid = cosh_terms(a3, q) if parity == "even" else sinh_terms(a3, q)
    return [
        Segment(-math.inf, -l0, (a1,), (g,)),
        Segment(-l0, -l1, *cos_terms(a2, phase, -k0)),
        Segment(-l1, l1, *mid),
        Segment(l1, l0, *cos_terms(sgn * a2, phase, k0)),
        Segment(l0, math.inf, (sgn * a1,), (-g,)),
    ]


def _residual(u: PiecewiseExp, p: DswpParams) -> MatchResidual:
    def mismatch(left, right, x):
        ld_l = u.one_sided(left, x, 1) / u.one_sided(left, x, 0)
        ld_r = u.one_sided(right, x, 1) / u.one_sided(right, x, 0)
        return abs(ld_l - ld_r) / max(abs(ld_l), abs(ld_r))

    l0, l1 = p.l0_m, p.l1_m
    at_l1 = max(mismatch(1, 2, -l1), mismatch(2, 3, l1))
    at_l0 = max(mismatch(0, 1, -l0), mismatch(3, 4, l0))
    return MatchResidual(at_l1=at_l1, at_l0=at_l0)


def _count_nodes(u: Callable, lo: float, hi: float, samples: int = 20001) -> int:
    y = u(np.linspace(lo, hi, samples))
    s = np.sign(y[np.abs(y) > 1e-9 * np.max(np.abs(y))])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def make_state(p: DswpParams, parity: Parity, energy_ev: float,
               constants: PhysicalConstants = DEFAULT_CONSTANTS) -> EigenState:
    """Assemble the normalized eigenstate for an energy that solves the matching condition."""
    wn = wavenumbers(p, energy_ev, constants)
    phase = _raw_phase(wn, p.l0_m) % math.pi
    l0, l1 = p.l0_m, p.l1_m
    a1 = 1.0
    a2 = a1 * math.exp(-wn.gamma * l0) / math.cos(phase + wn.k0 * l0)
    inner = a2 * math.cos(phase + wn.k0 * l1)
    if parity == "even":
        a3 = inner / math.cosh(wn.k1_abs * l1)
    else:
        a3 = -inner / math.sinh(wn.k1_abs * l1)
    raw = PiecewiseExp(_segments(p, parity, wn, phase, a1, a2, a3))
    norm_sq = raw.inner(raw)
    if not (norm_sq > 0 and math.isfinite(norm_sq)):
        raise NotNormalizable(f"int |u|^2 = {norm_sq}")
    norm = 1.0 / math.sqrt(norm_sq)
    u = raw.scaled(norm)
    residual = _residual(u, p)
    nodes = _count_nodes(u, -l0 - 5 / wn.gamma, l0 + 5 / wn.gamma)
    return EigenState(energy=energy_ev, parity=parity, phase=phase, a1=a1, a2=a2, a3_or_b3=a3,
                      norm=norm, node_count=nodes, wavenumbers=wn, residual=residual)


def solve_spectrum(p: DswpParams = DswpParams(), constants: PhysicalConstants = DEFAULT_CONSTANTS,
                   n_panels: int = 2000, tol_ev: float = 1e-13,
                   max_states: int | None = None) -> list[EigenState]:
    """All even and odd bound states with ``-V0 < E < -V1``, sorted by energy.

    The window is scanned on ``n_panels`` equal panels per parity and every
    sign change of :func:`matching_function` is refined with
    :func:`find_root` to ``tol_ev``.  ``max_states`` keeps only the lowest
    states.
    """
    lo, hi = -p.v0, -p.v1
    pad = 1e-9 * (hi - lo)
    grid = np.linspace(lo + pad, hi - pad, n_panels + 1)
    states = []
    for parity in ("even", "odd"):
        f = lambda e, parity=parity: matching_function(p, parity, e, constants)  # noqa: E731
        vals = np.array([f(e) for e in grid])
        for i in range(n_panels):
            if vals[i] == 0.0:
                root = grid[i]
            elif vals[i] * vals[i + 1] < 0:
                root = find_root(f, Bracket(grid[i], grid[i + 1], vals[i], vals[i + 1]), tol_ev)
            else:
                continue
            state = make_state(p, parity, root, constants)
            if state.residual.worst > MATCH_RESIDUAL_LIMIT:
                raise NumericalError(f"{parity} root at {root} eV fails matching "
                                     f"(residual {state.residual.worst:.2e})")
            states.append(state)
    if not states:
        raise NoStatesFound(f"no bound states in ({lo}, {hi}) eV")
    states.sort(key=lambda s: s.energy)
    return states[:max_states] if max_states else states


def build_wavefunction(state: EigenState, p: DswpParams) -> PiecewiseExp:
    """Normalized real eigenfunction ``u(x)`` (x in metres) for a solved state."""
    c = state.norm
    return PiecewiseExp(_segments(p, state.parity, state.wavenumbers, state.phase,
                                  c * state.a1, c * state.a2, c * state.a3_or_b3))


def support_cut(state: EigenState, p: DswpParams, floor: float = 1e-16) -> float:
    """Half-width beyond which ``exp(-2 gamma (x - L0))`` is below ``floor``."""
    return p.l0_m - math.log(floor) / (2.0 * state.wavenumbers.gamma)


def normalize(u: Callable, support_cut: float, tol: float = 1e-13):
    """Rescale ``u`` so that ``int_{-cut}^{cut} u^2 dx = 1``."""
    brk = getattr(u, "breakpoints", ())
    res = integrate(lambda x: u(x) ** 2, -support_cut, support_cut, tol, rtol=tol,
                    breakpoints=brk, initial_panels=4)
    total = float(res.value)
    if not (total > 0 and math.isfinite(total)):
        raise NotNormalizable(f"int u^2 = {total}")
    factor = 1.0 / math.sqrt(total)
    if isinstance(u, PiecewiseExp):
        return u.scaled(factor)
    return lambda x: factor * u(x)


@dataclass(frozen=True)
class IswpState:
    n: int
    energy_j: float
    width_m: float
    function: PiecewiseExp

    @property
    def energy(self) -> float:
        return self.energy_j / EV

    @property
    def parity(self) -> Parity:
        # about the well centre
        return "even" if self.n % 2 else "odd"


def iswp_state(p: IswpParams, n: int, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> IswpState:
    """``psi_n(x) = sqrt(2/L) sin(n pi x / L)`` on (0, L), ``E_n = hbar^2 pi^2 n^2 / 2 m L^2``."""
    if int(n) != n or n < 1:
        raise InvalidIndex(f"n must be a positive integer, got {n}")
    n = int(n)
    width = p.width_m
    kn = n * math.pi / width
    energy = (constants.hbar * kn) ** 2 / (2.0 * constants.particle_mass)
    fn = PiecewiseExp([Segment(0.0, width, *sin_terms(math.sqrt(2.0 / width), kn))])
    return IswpState(n=n, energy_j=energy, width_m=width, function=fn)
