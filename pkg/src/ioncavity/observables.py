"""
GHZ generation probability and population inversion.

The direct traces (ghz_probability, population_inversion) are the reference
values. The closed forms are analytic cross-checks for m = n = 1; with
printed=True they reproduce the published expressions term for term,
including their inconsistencies:

  * GHZ probability as published: exponents divided by 4 and the two
    trailing sine terms carry swapped coefficients. At kappa = 0,
    a t = pi/4, mu/a = 4 it gives 0.46875 instead of 1.
  * Inversion as published: (mu+a)/(2 mu) is used for both terms, so
    I(0) = (mu+a)/mu (1.25 at mu/a = 4) instead of 1.
"""

import math
import numpy as np
from dataclasses import dataclass

from .bath import DephasingProfile
from .errors import DimensionMismatch, InvalidParams
from .evolution import DensityOperator
from .model import SystemParams

GHZ_SIGNS = ("minus", "plus")

GROUND_INDICES = {4: (0, 2), 8: (0, 1, 2, 3)}
EXCITED_INDICES = {4: (1, 3), 8: (4, 5, 6, 7)}
# positions of |g,m-1,n-1> and |e,m,n> in each basis
GHZ_SUPPORT = {4: (0, 3), 8: (0, 7)}


@dataclass(frozen=True)
class GhzTarget:
    """
    GHZ target (|g,m-1,n-1> -+ i|e,m,n>)/sqrt(2).

    Attributes:
        sign: "minus" or "plus"
    """
    sign: str = "minus"

    def __post_init__(self):
        if self.sign not in GHZ_SIGNS:
            raise ValueError(f"sign must be one of {GHZ_SIGNS}, got '{self.sign}'")

    @classmethod
    def minus(cls) -> "GhzTarget":
        return cls("minus")

    @classmethod
    def plus(cls) -> "GhzTarget":
        return cls("plus")

    @property
    def phase(self) -> complex:
        return -1j if self.sign == "minus" else 1j

    def state(self, dim: int = 4) -> np.ndarray:
        """State vector in the model basis (dim 4) or the tripartite basis (dim 8)."""
        if dim not in GHZ_SUPPORT:
            raise DimensionMismatch(f"GHZ targets exist for dimensions 4 and 8, got {dim}")
        low, high = GHZ_SUPPORT[dim]
        psi = np.zeros(dim, dtype=np.complex128)
        psi[low] = 1.0 / math.sqrt(2.0)
        psi[high] = self.phase / math.sqrt(2.0)
        return psi

    def projector(self, dim: int = 4) -> DensityOperator:
        return DensityOperator.pure(self.state(dim), "model" if dim == 4 else "tripartite")


def fidelity(rho: DensityOperator, state) -> float:
    """<psi|rho|psi> for a pure target psi (normalised here)."""
    psi = np.asarray(state, dtype=np.complex128).ravel()
    if psi.shape[0] != rho.dim:
        raise DimensionMismatch(f"State dimension {psi.shape[0]} != density operator dimension {rho.dim}")
    psi = psi / np.linalg.norm(psi)
    return float(np.real(np.vdot(psi, rho.matrix @ psi)))


def ghz_probability(rho: DensityOperator, target: GhzTarget = GhzTarget()) -> float:
    """
    P_GHZ = Tr(rho |GHZ><GHZ|), clamped to [0, 1].

    Args:
        rho: State in the model basis (dim 4) or tripartite basis (dim 8)
        target: GHZ sign, minus by default

    Raises:
        DimensionMismatch: For any other dimension

    Example:
        >>> ghz_probability(InitialState().density(ModelBasis()))  # 0.5
    """
    if rho.dim not in GHZ_SUPPORT:
        raise DimensionMismatch(f"GHZ probability needs a 4- or 8-dimensional state, got {rho.dim}")
    value = fidelity(rho, target.state(rho.dim))
    return min(max(value, 0.0), 1.0)


def population_inversion(rho: DensityOperator) -> float:
    """I = P_g - P_e of the ion, for model-basis or tripartite states."""
    if rho.dim not in GROUND_INDICES:
        raise DimensionMismatch(f"Population inversion needs a 4- or 8-dimensional state, got {rho.dim}")
    diag = np.real(np.diag(rho.matrix))
    return float(diag[list(GROUND_INDICES[rho.dim])].sum() - diag[list(EXCITED_INDICES[rho.dim])].sum())


def _require_lowest_labels(params: SystemParams) -> None:
    if not params.is_derived:
        raise InvalidParams("SystemParams must be passed through derived_params() first")
    if params.m != 1 or params.n != 1:
        raise InvalidParams(f"Closed forms are written for m = n = 1, got m={params.m}, n={params.n}")


def ghz_probability_closed_form(params: SystemParams, profile: DephasingProfile, t: float, printed: bool = False) -> float:
    """
    Analytic GHZ- probability for initial |g,0,0>.

    Corrected form:

        P = 1/2 - w + w e^{-mu^2 G} cos(2 mu t) cos(phi)
                    + w e^{-a^2 G} sin(2 a t) cos(phi)
            - 1/2 ((mu+a)/2mu)^2 e^{-(mu-a)^2 G} sin(2(mu-a)t)
            + 1/2 ((mu-a)/2mu)^2 e^{-(mu+a)^2 G} sin(2(mu+a)t)

    with w = Omega^2 / (4 mu^2) and G = Gamma(t).

    Args:
        params: Derived parameters with m = n = 1
        profile: Dephasing profile serving t
        t: Time (grid point unless the profile interpolates)
        printed: Evaluate the published expression instead

    Raises:
        InvalidParams: If m or n differ from 1
        GridMiss: If the profile cannot serve t
    """
    _require_lowest_labels(params)
    gamma, _, phi = profile.at(t)
    mu, a = params.mu_mn, params.a_mn
    w = params.omega_rabi ** 2 / (4.0 * mu * mu)
    plus = ((mu + a) / (2.0 * mu)) ** 2
    minus = ((mu - a) / (2.0 * mu)) ** 2
    damp = 0.25 if printed else 1.0
    cos_phi = math.cos(phi)

    mu_term = w * math.exp(-damp * mu * mu * gamma) * math.cos(2 * mu * t) * cos_phi
    a_term = w * math.exp(-damp * a * a * gamma) * math.sin(2 * a * t) * cos_phi
    slow = math.exp(-damp * (mu - a) ** 2 * gamma) * math.sin(2 * (mu - a) * t)
    fast = math.exp(-damp * (mu + a) ** 2 * gamma) * math.sin(2 * (mu + a) * t)
    if printed:
        return 0.5 + mu_term + (a_term - w) + 0.5 * minus * slow - 0.5 * plus * fast
    return 0.5 - w + mu_term + a_term - 0.5 * plus * slow + 0.5 * minus * fast


def inversion_closed_form(params: SystemParams, profile: DephasingProfile, t: float, printed: bool = False) -> float:
    """
    Analytic population inversion for initial |g,0,0>.

        I = (mu+a)/(2mu) e^{-(mu-a)^2 G} cos(2(mu-a)t)
          + (mu-a)/(2mu) e^{-(mu+a)^2 G} cos(2(mu+a)t)

    No phi(t) enters, so the inversion is blind to the bath phase drift.
    printed=True uses (mu+a)/(2mu) for both terms.
    """
    _require_lowest_labels(params)
    gamma, _, _ = profile.at(t)
    mu, a = params.mu_mn, params.a_mn
    slow_weight = (mu + a) / (2.0 * mu)
    fast_weight = slow_weight if printed else (mu - a) / (2.0 * mu)
    return (
        slow_weight * math.exp(-((mu - a) ** 2) * gamma) * math.cos(2 * (mu - a) * t)
        + fast_weight * math.exp(-((mu + a) ** 2) * gamma) * math.cos(2 * (mu + a) * t)
    )


def ghz_generation_time(params: SystemParams, p: int = 1, target: GhzTarget = GhzTarget()) -> float:
    """
    Time of the p-th GHZ point at kappa = 0 for mu/a = 4.

    GHZ- is reached at a t = pi/4, 5pi/4, ...; GHZ+ at a t = 3pi/4, 7pi/4, ...
    The result is in the inverse unit of params.a_mn (seconds for rad/s).

    Example:
        >>> params = SystemParams.from_alpha(8.95e6, 4.0)
        >>> ghz_generation_time(params)  # about 0.340 microseconds
    """
    if not params.is_derived:
        raise InvalidParams("SystemParams must be passed through derived_params() first")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    offset = 3 if target.sign == "minus" else 1
    return (4 * p - offset) * math.pi / (4.0 * params.a_mn)
