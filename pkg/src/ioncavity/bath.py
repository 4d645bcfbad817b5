"""
Ohmic-bath dephasing integrals.

For the spectral form D(w)|g(w)|^2 = kappa * w * exp(-w/w_c):

    Gamma(t) = 8 kappa Int dw exp(-w/w_c)/w * coth(beta w/2) * sin^2(w t/2)
    C(t)     =   kappa Int dw exp(-w/w_c)/w * (sin(w t) - w t)

Both are integrated over w in [0, 3 w_c]. They are linear in kappa, so the
kappa-free integrals are computed once per (cutoff, beta, grid) and scaled.
"""

import math
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import constants
from scipy.interpolate import PchipInterpolator

from .errors import GridMiss, InvalidParams
from .model import SystemParams
from .quadrature import integrate_adaptive_simpson

UPPER_LIMIT_FACTOR = 3.0
SERIES_THRESHOLD = 1e-2
GRID_MATCH_RTOL = 1e-12


def beta_from_temperature(temperature_k: float) -> float:
    """Inverse temperature beta = hbar / (k_B T) in seconds."""
    if not temperature_k > 0:
        raise InvalidParams(f"temperature_k must be > 0, got {temperature_k}")
    return constants.hbar / (constants.k * temperature_k)


@dataclass(frozen=True)
class BathSpec:
    """
    Ohmic bath with exponential cutoff.

    Attributes:
        kappa: Dimensionless coupling strength
        cutoff: Bath cutoff frequency w_c (same unit system as the time grid)
        beta: Inverse temperature hbar/(k_B T) in the matching time unit
        quad_rel_tol: Relative tolerance of the adaptive quadrature
        quad_max_depth: Bisection levels allowed before giving up
    """
    kappa: float
    cutoff: float
    beta: float
    quad_rel_tol: float = 1e-8
    quad_max_depth: int = 40

    def __post_init__(self):
        problems = []
        if not self.kappa >= 0:
            problems.append(f"kappa must be >= 0, got {self.kappa}")
        if not self.cutoff > 0:
            problems.append(f"cutoff must be > 0, got {self.cutoff}")
        if not self.beta > 0:
            problems.append(f"beta must be > 0, got {self.beta}")
        if not self.quad_rel_tol > 0:
            problems.append(f"quad_rel_tol must be > 0, got {self.quad_rel_tol}")
        if self.quad_max_depth < 1:
            problems.append(f"quad_max_depth must be >= 1, got {self.quad_max_depth}")
        if problems:
            raise InvalidParams("; ".join(problems))

    @property
    def upper_limit(self) -> float:
        return UPPER_LIMIT_FACTOR * self.cutoff

    def with_kappa(self, kappa: float) -> "BathSpec":
        return replace(self, kappa=kappa)


def _gamma_integrand(t: float, cutoff: float, beta: float):
    limit = t * t / (2.0 * beta)

    def integrand(w: np.ndarray) -> np.ndarray:
        out = np.full(w.shape, limit)
        nz = w > 0
        wn = w[nz]
        out[nz] = np.exp(-wn / cutoff) / (wn * np.tanh(0.5 * beta * wn)) * np.sin(0.5 * wn * t) ** 2
        return out

    return integrand


def _c_integrand(t: float, cutoff: float):
    def integrand(w: np.ndarray) -> np.ndarray:
        x = w * t
        small = np.abs(x) < SERIES_THRESHOLD
        x2 = x * x
        series = -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
        diff = np.where(small, series, np.sin(x) - x)
        out = np.zeros(w.shape)
        nz = w > 0
        out[nz] = np.exp(-w[nz] / cutoff) / w[nz] * diff[nz]
        return out

    return integrand


def _max_panel_width(t: float) -> Optional[float]:
    return math.pi / (4.0 * t) if t > 0 else None


def _unit_gamma(t: float, cutoff: float, beta: float, rel_tol: float, max_depth: int) -> float:
    if t == 0:
        return 0.0
    value, _ = integrate_adaptive_simpson(
        _gamma_integrand(t, cutoff, beta),
        0.0,
        UPPER_LIMIT_FACTOR * cutoff,
        rel_tol=rel_tol,
        max_depth=max_depth,
        max_panel_width=_max_panel_width(t),
    )
    return max(8.0 * value, 0.0)


def _unit_c(t: float, cutoff: float, rel_tol: float, max_depth: int) -> float:
    if t == 0:
        return 0.0
    value, _ = integrate_adaptive_simpson(
        _c_integrand(t, cutoff),
        0.0,
        UPPER_LIMIT_FACTOR * cutoff,
        rel_tol=rel_tol,
        max_depth=max_depth,
        max_panel_width=_max_panel_width(t),
    )
    return min(value, 0.0)


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0:
        raise ValueError(f"t must be >= 0, got {t}")
    return t


def gamma_of_t(spec: BathSpec, t: float) -> float:
    """
    Dephasing amplitude Gamma(t) >= 0.

    The integrand's w -> 0 limit t^2/(2 beta) is substituted at w = 0.

    Raises:
        QuadratureNoConvergence: If the quadrature misses spec.quad_rel_tol
    """
    t = _check_time(t)
    if spec.kappa == 0 or t == 0:
        return 0.0
    return spec.kappa * _unit_gamma(t, spec.cutoff, spec.beta, spec.quad_rel_tol, spec.quad_max_depth)


def c_of_t(spec: BathSpec, t: float) -> float:
    """
    Phase-drift integral C(t) <= 0.

    Raises:
        QuadratureNoConvergence: If the quadrature misses spec.quad_rel_tol
    """
    t = _check_time(t)
    if spec.kappa == 0 or t == 0:
        return 0.0
    return spec.kappa * _unit_c(t, spec.cutoff, spec.quad_rel_tol, spec.quad_max_depth)


@lru_cache(maxsize=64)
def _unit_profile(grid: Tuple[float, ...], cutoff: float, beta: float, rel_tol: float, max_depth: int):
    gamma = np.array([_unit_gamma(t, cutoff, beta, rel_tol, max_depth) for t in grid])
    c = np.array([_unit_c(t, cutoff, rel_tol, max_depth) for t in grid])
    gamma.setflags(write=False)
    c.setflags(write=False)
    return gamma, c


def _read_only(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class DephasingProfile:
    """
    Gamma(t), C(t) and phi(t) = 4 mu a C(t) sampled on a time grid.

    Lookups must hit a grid point unless the profile was built with
    interpolate=True, in which case off-grid times inside the grid range are
    served by monotone cubic (PCHIP) interpolation.
    """
    grid: np.ndarray
    gamma: np.ndarray
    c: np.ndarray
    phi: np.ndarray
    kappa: float = 0.0
    interpolate: bool = False
    _lookup_tol: float = field(default=GRID_MATCH_RTOL, repr=False)

    def __len__(self) -> int:
        return self.grid.shape[0]

    def index_of(self, t: float) -> Optional[int]:
        """Grid index of t, or None when t is not a grid point."""
        grid = self.grid
        pos = int(np.searchsorted(grid, t))
        tol = self._lookup_tol * max(1.0, abs(t))
        for candidate in (pos - 1, pos):
            if 0 <= candidate < grid.shape[0] and abs(grid[candidate] - t) <= tol:
                return candidate
        return None

    @cached_property
    def _interpolants(self):
        return tuple(PchipInterpolator(self.grid, values) for values in (self.gamma, self.c, self.phi))

    def at(self, t: float) -> Tuple[float, float, float]:
        """
        Return (Gamma, C, phi) at time t.

        Raises:
            GridMiss: If t is off the grid and interpolation is disabled, or t
                lies outside [grid[0], grid[-1]]
        """
        idx = self.index_of(t)
        if idx is not None:
            return float(self.gamma[idx]), float(self.c[idx]), float(self.phi[idx])
        lo, hi = float(self.grid[0]), float(self.grid[-1])
        if not self.interpolate:
            raise GridMiss(f"t={t:g} is not a grid point of the profile (range [{lo:g}, {hi:g}])")
        if len(self) < 2 or not lo <= t <= hi:
            raise GridMiss(f"t={t:g} lies outside the profile range [{lo:g}, {hi:g}]")
        gamma, c, phi = (float(interp(t)) for interp in self._interpolants)
        return max(gamma, 0.0), min(c, 0.0), phi


def _validate_grid(grid: Sequence[float]) -> np.ndarray:
    values = np.asarray(grid, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("Time grid must contain at least one sample")
    if values[0] < 0:
        raise ValueError(f"Time grid must start at t >= 0, got {values[0]}")
    if values.size > 1 and not np.all(np.diff(values) > 0):
        raise ValueError("Time grid must be strictly ascending")
    return values


def build_profile(spec: BathSpec, params: SystemParams, grid: Sequence[float], interpolate: bool = False) -> DephasingProfile:
    """
    Sample Gamma, C and phi on a time grid.

    Args:
        spec: Bath specification
        params: Derived system parameters; phi = 4 * mu_mn * a_mn * C
        grid: Strictly ascending times, grid[0] >= 0
        interpolate: Allow off-grid lookups through PCHIP interpolation

    Returns:
        DephasingProfile with read-only arrays

    Raises:
        ValueError: If the grid is empty, negative or not ascending
        InvalidParams: If params is not derived
        QuadratureNoConvergence: Propagated from the quadrature

    Example:
        >>> spec = BathSpec(kappa=0.01, cutoff=519.3, beta=5.881e-4)
        >>> profile = build_profile(spec, params, np.linspace(0, np.pi, 721))
        >>> gamma, c, phi = profile.at(np.pi / 4)
    """
    if not params.is_derived:
        raise InvalidParams("SystemParams must be passed through derived_params() first")
    times = _validate_grid(grid)
    if spec.kappa == 0:
        gamma = np.zeros_like(times)
        c = np.zeros_like(times)
    else:
        unit_gamma, unit_c = _unit_profile(
            tuple(times.tolist()), spec.cutoff, spec.beta, spec.quad_rel_tol, spec.quad_max_depth
        )
        gamma = spec.kappa * unit_gamma
        c = spec.kappa * unit_c
    phi = 4.0 * params.mu_mn * params.a_mn * c
    return DephasingProfile(
        grid=_read_only(times),
        gamma=_read_only(gamma),
        c=_read_only(c),
        phi=_read_only(phi),
        kappa=spec.kappa,
        interpolate=interpolate,
    )
