"""
Leakage out of the four-level model space under the full interaction Hamiltonian.

Starting from |g,0,0>, the first state outside the model space is |g,2,2>,
reached through |e,0,0> -> |g,1,1> -> |e,1,1>; its amplitude grows as t^4,
so the leaked probability grows as t^8 at short times.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from .errors import CutoffTooSmall, DegenerateFit
from .evolution import DensityOperator, trusted_density
from .linalg import HermitianEigenSystem, hermitian_eigensystem, hermitian_expm
from .model import ION_LABELS, SystemParams, build_h_full, build_h_is, fock_index, model_space_indices

MIN_CUTOFF = 4
MIN_FIT_SAMPLES = 5
GOOD_FIT_R2 = 0.99

FOCK_TAG = "fock"


@dataclass(frozen=True)
class FockSpace:
    """
    Truncated ion x phonon x photon space.

    Attributes:
        phonon_cut: Number of phonon levels kept (0 .. phonon_cut-1)
        photon_cut: Number of photon levels kept (0 .. photon_cut-1)
    """
    phonon_cut: int = 6
    photon_cut: int = 6

    def __post_init__(self):
        if self.phonon_cut < 2 or self.photon_cut < 2:
            raise CutoffTooSmall(f"Fock cutoffs must be >= 2, got ({self.phonon_cut}, {self.photon_cut})")

    @property
    def dim(self) -> int:
        return 2 * self.phonon_cut * self.photon_cut

    def index(self, ion: str, phonon: int, photon: int) -> int:
        if not (0 <= phonon < self.phonon_cut and 0 <= photon < self.photon_cut):
            raise CutoffTooSmall(f"|{ion},{phonon},{photon}> lies outside cutoffs ({self.phonon_cut}, {self.photon_cut})")
        return fock_index(ION_LABELS.index(ion), phonon, photon, self.phonon_cut, self.photon_cut)

    def ket(self, flat: int) -> Tuple[str, int, int]:
        ion, rest = divmod(flat, self.phonon_cut * self.photon_cut)
        phonon, photon = divmod(rest, self.photon_cut)
        return ION_LABELS[ion], phonon, photon

    def doubled(self) -> "FockSpace":
        return FockSpace(2 * self.phonon_cut, 2 * self.photon_cut)


class PowerLawFit(NamedTuple):
    exponent: float
    r2: float


def _require_cutoffs(space: FockSpace) -> None:
    if space.phonon_cut < MIN_CUTOFF or space.photon_cut < MIN_CUTOFF:
        raise CutoffTooSmall(
            f"Leakage needs cutoffs >= {MIN_CUTOFF}, got ({space.phonon_cut}, {space.photon_cut})"
        )


@lru_cache(maxsize=16)
def full_space_eigensystem(params: SystemParams, space: FockSpace) -> HermitianEigenSystem:
    """Eigensystem of build_h_full, cached per (params, space)."""
    return hermitian_eigensystem(build_h_full(params, space.phonon_cut, space.photon_cut))


def _initial_vector(params: SystemParams, space: FockSpace) -> np.ndarray:
    psi = np.zeros(space.dim, dtype=np.complex128)
    psi[space.index("g", params.m - 1, params.n - 1)] = 1.0
    return psi


def _outside_mask(params: SystemParams, space: FockSpace) -> np.ndarray:
    mask = np.ones(space.dim, dtype=bool)
    mask[model_space_indices(params, space.phonon_cut, space.photon_cut)] = False
    return mask


def full_space_states(params: SystemParams, space: FockSpace, times: Sequence[float]) -> np.ndarray:
    """
    Columns psi(t_k) = exp(-i H t_k) |g,m-1,n-1> on the truncated space.

    One eigendecomposition serves every time.
    """
    _require_cutoffs(space)
    eig = full_space_eigensystem(params, space)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    coeffs = eig.vectors.conj().T @ _initial_vector(params, space)
    phases = np.exp(-1j * np.outer(eig.values, times))
    return eig.vectors @ (coeffs[:, None] * phases)


def full_space_state(params: SystemParams, space: FockSpace, t: float) -> np.ndarray:
    return full_space_states(params, space, [t])[:, 0]


def full_space_evolve(params: SystemParams, space: FockSpace, t: float) -> DensityOperator:
    """
    Pure state U(t)|g,m-1,n-1><g,m-1,n-1|U(t)^dagger on the truncated Fock space.

    Raises:
        CutoffTooSmall: If either cutoff is below 4
    """
    psi = full_space_state(params, space, t)
    return trusted_density(np.outer(psi, psi.conj()), FOCK_TAG)


def leakage_series(params: SystemParams, space: FockSpace, times: Sequence[float]) -> np.ndarray:
    """
    Probability outside the model space at each time.

    Summed directly over the outside amplitudes; 1 - (model-space
    populations) loses everything below ~1e-16 to cancellation.
    """
    states = full_space_states(params, space, times)
    outside = states[_outside_mask(params, space)]
    return np.clip(np.sum(np.abs(outside) ** 2, axis=0), 0.0, 1.0)


def leakage_probability(params: SystemParams, space: FockSpace, t: float) -> float:
    """
    Probability of finding the system outside the model space at time t.

    Example:
        >>> params = SystemParams.from_alpha(np.sqrt(15.0), 4.0)
        >>> leakage_probability(params, FockSpace(6, 6), 0.1)  # about 2.5e-7
    """
    return float(leakage_series(params, space, [t])[0])


def model_space_fidelity(params: SystemParams, space: FockSpace, t: float) -> float:
    """
    |<psi_4(t)| P psi(t)>|^2 between the 4-level evolution and the model-space
    projection of the full evolution, both from |g,m-1,n-1>.
    """
    psi = full_space_state(params, space, t)
    projected = psi[model_space_indices(params, space.phonon_cut, space.photon_cut)]
    psi4 = hermitian_expm(build_h_is(params), -t)[:, 0]
    return float(abs(np.vdot(psi4, projected)) ** 2)


def fit_power_law(times: Sequence[float], values: Sequence[float]) -> PowerLawFit:
    """
    Least-squares line through (ln t, ln p).

    Args:
        times: Sample times, all > 0
        values: Sample values, all > 0

    Returns:
        PowerLawFit(exponent, r2)

    Raises:
        DegenerateFit: Fewer than 5 samples, all times equal, or a non-positive
            time or value
    """
    t = np.asarray(times, dtype=float).ravel()
    p = np.asarray(values, dtype=float).ravel()
    if t.shape != p.shape:
        raise DegenerateFit(f"times and values differ in length ({t.size} vs {p.size})")
    if t.size < MIN_FIT_SAMPLES:
        raise DegenerateFit(f"Need at least {MIN_FIT_SAMPLES} samples, got {t.size}")
    if np.any(t <= 0) or np.any(p <= 0):
        raise DegenerateFit("Power-law fit needs strictly positive times and values")
    if np.all(t == t[0]):
        raise DegenerateFit("All sample times are equal")

    x, y = np.log(t), np.log(p)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - float(np.sum(residual ** 2)) / float(total) if total > 0 else 1.0
    if r2 < GOOD_FIT_R2:
        warnings.warn(f"Power-law fit is poor (r^2 = {r2:.4f}); the samples may not follow a single power law")
    return PowerLawFit(exponent=float(slope), r2=r2)
