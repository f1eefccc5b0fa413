"""Model potentials and unit conventions.

User-facing parameters are given in eV and angstrom.  Everything downstream
(eigen-solving, transforms, measures) works in SI; the ``*_j`` / ``*_m``
properties are the bridge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc

from .errors import UnknownUnit, ValidationError

EV = _sc.electron_volt          # J, exact
ANGSTROM = 1e-10                # m, exact
GHZ = 1e9                       # s^-1
# Standard atomic weight of hydrogen; with m = 3 m_h this reproduces the
# tabulated ammonia energies to the last printed digit.
HYDROGEN_MASS_U = 1.00794


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _sc.hbar
    m_h: float = HYDROGEN_MASS_U * _sc.atomic_mass
    mass_multiple: float = 3.0

    def __post_init__(self):
        for name in ("hbar", "m_h", "mass_multiple"):
            if not getattr(self, name) > 0:
                raise ValidationError(name, "must be strictly positive")

    @property
    def particle_mass(self) -> float:
        return self.mass_multiple * self.m_h

    @property
    def kinetic_scale(self) -> float:
        """2m / hbar^2, converting an energy (J) into a squared wavenumber (m^-2)."""
        return 2.0 * self.particle_mass / self.hbar ** 2


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class DswpParams:
    v0: float = 0.5        # eV, well depth
    v1: float = 0.25       # eV, barrier top (measured from zero, negative sign implied)
    l0: float = 0.672      # angstrom, outer half-width
    l1: float = 0.128      # angstrom, inner half-width

    def __post_init__(self):
        if not (self.v0 > self.v1 > 0):
            raise ValidationError("v0_eV/v1_eV", f"need v0 > v1 > 0, got v0={self.v0}, v1={self.v1}")
        if not (self.l0 > self.l1 > 0):
            raise ValidationError("l0_angstrom/l1_angstrom",
                                  f"need l0 > l1 > 0, got l0={self.l0}, l1={self.l1}")

    @property
    def v0_j(self):
        return self.v0 * EV

    @property
    def v1_j(self):
        return self.v1 * EV

    @property
    def l0_m(self):
        return self.l0 * ANGSTROM

    @property
    def l1_m(self):
        return self.l1 * ANGSTROM


@dataclass(frozen=True)
class IswpParams:
    width: float = 2 * 0.672   # angstrom

    def __post_init__(self):
        if not self.width > 0:
            raise ValidationError("iswp_width_angstrom", "must be positive")

    @property
    def width_m(self):
        return self.width * ANGSTROM

    @classmethod
    def matching(cls, dswp: DswpParams) -> "IswpParams":
        """Infinite well as wide as the double well (L = 2 L0)."""
        return cls(width=2 * dswp.l0)


@dataclass(frozen=True)
class ManningParams:
    c_depth: float
    d_height: float
    rho_scale: float

    def __post_init__(self):
        for name in ("c_depth", "d_height", "rho_scale"):
            if not getattr(self, name) > 0:
                raise ValidationError(name, "must be positive")


def dswp_value(p: DswpParams, x):
    """Double square well in eV at ``x`` (angstrom).

    Boundary points belong to the inner region: ``|x| = l1`` gives ``-v1`` and
    ``|x| = l0`` gives ``-v0``.
    """
    ax = np.abs(np.asarray(x, dtype=float))
    v = np.where(ax <= p.l1, -p.v1, np.where(ax <= p.l0, -p.v0, 0.0))
    return v if v.ndim else float(v)


def iswp_value(p: IswpParams, x):
    """0 on the open interval (0, width), ``inf`` elsewhere (x in angstrom)."""
    x = np.asarray(x, dtype=float)
    v = np.where((x > 0) & (x < p.width), 0.0, np.inf)
    return v if v.ndim else float(v)


def manning_value(p: ManningParams, x):
    """``-C sech^2(x / 2 rho) + D sech^4(x / 2 rho)``."""
    s2 = 1.0 / np.cosh(np.asarray(x, dtype=float) / (2.0 * p.rho_scale)) ** 2
    v = -p.c_depth * s2 + p.d_height * s2 * s2
    return v if np.ndim(v) else float(v)


_UNITS = {
    "ev": EV,
    "angstrom": ANGSTROM,
    "å": ANGSTROM,
    "a": ANGSTROM,
    "ghz": GHZ,
    "si": 1.0,
}


def _factor(unit: str) -> float:
    try:
        return _UNITS[unit.strip().lower()]
    except (KeyError, AttributeError):
        raise UnknownUnit(f"unknown unit {unit!r}; expected one of eV, angstrom, GHz, SI") from None


def to_si(value, unit: str):
    """Convert ``value`` given in ``unit`` (eV, angstrom, GHz or SI) to SI."""
    return value * _factor(unit)


def from_si(value, unit: str):
    return value / _factor(unit)


def bohr_period(delta_e_j: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return 2.0 * math.pi * constants.hbar / delta_e_j
