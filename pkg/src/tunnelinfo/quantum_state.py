"""Two-level superpositions, their time evolution and momentum-space picture.

    psi(x, t) = [u_a(x) + s u_b(x) exp(-i dE t / hbar)] / sqrt(2)

The global phase ``exp(-i E_a t / hbar)`` is dropped; it cancels in every
density.  ``phi(k, t)`` is the same combination of the closed-form transforms
of ``u_a`` and ``u_b``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .eigensolver import EigenState, IswpState, build_wavefunction, iswp_state, solve_spectrum
from .errors import GridTooNarrow, UnknownPair
from .numerics import decay_cut, integrate
from .piecewise import PiecewiseExp
from .potentials import DEFAULT_CONSTANTS, EV, GHZ, DswpParams, IswpParams, PhysicalConstants

System = Literal["dswp", "iswp"]
Space = Literal["position", "momentum"]

POSITION_DISPLAY_SCALE = 1e-10
MOMENTUM_DISPLAY_SCALE = 1e11
MOMENTUM_TAIL_RATIO = 1e-14      # n(k) / max n at the momentum cut
POSITION_TAIL_DECAYS = 20.0      # integration support: L0 + 20 / gamma
GRID_TAIL_DECAYS = 10.0          # tabulation grid: L0 + 10 / gamma
GRID_EDGE_RATIO = 1e-8           # GridTooNarrow when edge density exceeds this * max


@dataclass(frozen=True)
class SuperpositionState:
    state_a: Union[EigenState, IswpState]
    state_b: Union[EigenState, IswpState]
    u_a: PiecewiseExp
    u_b: PiecewiseExp
    delta_e: float                       # J
    sign: int
    system: System
    params: Union[DswpParams, IswpParams]
    constants: PhysicalConstants = DEFAULT_CONSTANTS
    k_cut: float = field(default=math.nan, compare=False)

    def __post_init__(self):
        if not self.delta_e > 0:
            raise ValueError("delta_e must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def delta_e_ev(self) -> float:
        return self.delta_e / EV

    @property
    def omega(self) -> float:
        return self.delta_e / self.constants.hbar

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def centre(self) -> float:
        return 0.0 if self.system == "dswp" else 0.5 * self.params.width_m

    @property
    def breakpoints(self) -> tuple:
        if self.system == "dswp":
            return self.u_a.breakpoints
        return (self.centre,)

    @property
    def min_gamma(self) -> float:
        return min(self.state_a.wavenumbers.gamma, self.state_b.wavenumbers.gamma)

    def position_support(self, decays: float = POSITION_TAIL_DECAYS) -> tuple[float, float]:
        """Finite interval carrying all but a negligible part of the density."""
        if self.system == "iswp":
            return 0.0, self.params.width_m
        cut = self.params.l0_m + decays / self.min_gamma
        return -cut, cut

    def relative_phase(self, t) -> complex:
        return np.exp(-1j * self.omega * np.asarray(t, dtype=float))


def _pair_indices(system: System, pair: str) -> tuple[int, int]:
    table = {("dswp", "ground"): (0, 1), ("dswp", "excited"): (2, 3), ("iswp", "ground"): (1, 2)}
    try:
        return table[(system, pair)]
    except KeyError:
        raise UnknownPair(f"no level pair {pair!r} for system {system!r}") from None


def _momentum_cut(u_a: PiecewiseExp, u_b: PiecewiseExp, scale: float) -> float:
    def envelope(k):
        return np.abs(u_a.fourier(k)) ** 2 + np.abs(u_b.fourier(k)) ** 2

    peak = float(np.max(envelope(np.linspace(-4 * scale, 4 * scale, 4001))))
    return decay_cut(envelope, scale, MOMENTUM_TAIL_RATIO * peak, samples=2048)


def make_superposition(system: System = "dswp", pair: str = "ground", side: str = "left",
                       params: Union[DswpParams, IswpParams, None] = None,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS,
                       spectrum: list[EigenState] | None = None) -> SuperpositionState:
    """Equal-weight superposition of a level pair, localized on ``side`` at t = 0.

    The relative sign is chosen from the t = 0 density so that the requested
    side holds the larger share of probability.  For the double well this is
    ``(u_S + u_A) / sqrt(2)`` for the left well; for the infinite well it is
    ``(psi_1 + psi_2) / sqrt(2)``.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    ia, ib = _pair_indices(system, pair)
    if system == "dswp":
        params = params or DswpParams()
        if spectrum is None:
            spectrum = solve_spectrum(params, constants)
        if len(spectrum) <= ib:
            raise UnknownPair(f"only {len(spectrum)} sub-barrier states; pair {pair!r} missing")
        sa, sb = spectrum[ia], spectrum[ib]
        if (sa.parity, sb.parity) != ("even", "odd"):
            raise UnknownPair(f"states {ia},{ib} are not an even/odd pair")
        u_a, u_b = build_wavefunction(sa, params), build_wavefunction(sb, params)
        delta = sb.energy_j - sa.energy_j
        scale = max(sa.wavenumbers.gamma, sb.wavenumbers.gamma)
        centre = 0.0
        lo = -params.l0_m - 20 / min(sa.wavenumbers.gamma, sb.wavenumbers.gamma)
    else:
        params = params or IswpParams()
        sa, sb = iswp_state(params, ia, constants), iswp_state(params, ib, constants)
        u_a, u_b = sa.function, sb.function
        delta = sb.energy_j - sa.energy_j
        scale = 2 * math.pi / params.width_m
        centre = 0.5 * params.width_m
        lo = 0.0
    left_plus = float(integrate(lambda x: 0.5 * (u_a(x) + u_b(x)) ** 2, lo, centre, 1e-12,
                                breakpoints=u_a.breakpoints, initial_panels=4).value)
    sign = 1 if left_plus >= 0.5 else -1
    if side == "right":
        sign = -sign
    return SuperpositionState(state_a=sa, state_b=sb, u_a=u_a, u_b=u_b, delta_e=delta, sign=sign,
                              system=system, params=params, constants=constants,
                              k_cut=_momentum_cut(u_a, u_b, scale))


def psi(s: SuperpositionState, x, t: float = 0.0):
    """Position amplitude (complex), global phase omitted."""
    return (s.u_a(x) + s.sign * s.relative_phase(t) * s.u_b(x)) / math.sqrt(2.0)


def psi_dx(s: SuperpositionState, x, t: float = 0.0):
    return (s.u_a.derivative(x) + s.sign * s.relative_phase(t) * s.u_b.derivative(x)) / math.sqrt(2.0)


def phi(s: SuperpositionState, k, t: float = 0.0):
    """Momentum amplitude ``(2 pi)^-1/2 int psi e^{-ikx} dx`` in closed form."""
    return (s.u_a.fourier(k) + s.sign * s.relative_phase(t) * s.u_b.fourier(k)) / math.sqrt(2.0)


def phi_dk(s: SuperpositionState, k, t: float = 0.0):
    return (s.u_a.fourier(k, derivative=True)
            + s.sign * s.relative_phase(t) * s.u_b.fourier(k, derivative=True)) / math.sqrt(2.0)


@dataclass(frozen=True)
class DensitySample:
    space: Space
    time: float                    # s
    grid: np.ndarray               # m or m^-1
    values: np.ndarray             # m^-1 or m
    display_scale: float

    @property
    def scaled(self) -> np.ndarray:
        return self.values * self.display_scale

    def total(self) -> float:
        return float(np.trapezoid(self.values, self.grid))


def position_grid(s: SuperpositionState, n_grid: int = 4001) -> np.ndarray:
    if s.system == "iswp":
        return np.linspace(0.0, s.params.width_m, n_grid)
    cut = s.params.l0_m + GRID_TAIL_DECAYS / s.min_gamma
    return np.linspace(-cut, cut, n_grid)


def momentum_grid(s: SuperpositionState, n_grid: int = 4001) -> np.ndarray:
    """Uniform k grid up to the tail cut, narrowed if needed so the spacing
    stays below ``pi / extent`` (no aliasing of the position-space support)."""
    lo, hi = s.position_support(GRID_TAIL_DECAYS)
    sampling_limit = (n_grid - 1) * math.pi / (2.0 * (hi - lo))
    cut = min(s.k_cut, sampling_limit)
    return np.linspace(-cut, cut, n_grid)


def _check_edges(values, space):
    peak = float(np.max(values))
    edge = max(float(values[0]), float(values[-1]))
    if edge > GRID_EDGE_RATIO * peak:
        raise GridTooNarrow(f"{space} density at grid edge is {edge / peak:.2e} of its maximum")


def density_position(s: SuperpositionState, t: float, grid=None, n_grid: int = 4001) -> DensitySample:
    """``rho(x, t) = |psi(x, t)|^2`` tabulated on ``grid`` (metres)."""
    x = position_grid(s, n_grid) if grid is None else np.asarray(grid, dtype=float)
    rho = np.abs(psi(s, x, t)) ** 2
    if s.system == "dswp":
        _check_edges(rho, "position")
    return DensitySample("position", float(t), x, rho, POSITION_DISPLAY_SCALE)


def density_momentum(s: SuperpositionState, t: float, grid=None, n_grid: int = 4001) -> DensitySample:
    """``n(k, t) = |phi(k, t)|^2`` tabulated on ``grid`` (m^-1)."""
    k = momentum_grid(s, n_grid) if grid is None else np.asarray(grid, dtype=float)
    n = np.abs(phi(s, k, t)) ** 2
    _check_edges(n, "momentum")
    return DensitySample("momentum", float(t), k, n, MOMENTUM_DISPLAY_SCALE)


def bohr_frequency(s: SuperpositionState) -> float:
    """Oscillation frequency ``dE / (2 pi hbar)`` in GHz."""
    return s.delta_e / (2.0 * math.pi * s.constants.hbar) / GHZ
