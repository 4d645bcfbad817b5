"""
Ion-laser-cavity Hamiltonians in the interaction picture.

All energies are stored as angular frequencies (hbar = 1). The four-level
model space for labels (m, n) is ordered

    0: |g, m-1, n-1>    1: |e, m-1, n-1>    2: |g, m, n>    3: |e, m, n>
"""

import math
import numpy as np
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .errors import CutoffTooSmall, InvalidParams

RESONANCE_RTOL = 1e-12

ION_LABELS = ("g", "e")


@dataclass(frozen=True)
class SystemParams:
    """
    Physical constants of the trapped-ion/cavity system.

    The derived fields (a_mn, mu_mn, coeff_a, coeff_b, alpha) are None until
    the instance has been passed through derived_params().

    Attributes:
        omega_rabi: Laser Rabi frequency Omega
        ion_cavity_g: Ion-cavity coupling g
        eta_c: Ion-cavity Lamb-Dicke parameter
        m: Phonon label of the model space
        n: Photon label of the model space
        eta_l: Ion-laser Lamb-Dicke parameter (carried, not consumed)
        trap_freq, ion_freq, laser_freq, cavity_freq: Optional free-Hamiltonian
            frequencies; when all are given the resonance conditions
            laser_freq == ion_freq and cavity_freq == ion_freq - trap_freq
            are enforced
    """
    omega_rabi: float
    ion_cavity_g: float
    eta_c: float
    m: int = 1
    n: int = 1
    eta_l: float = 0.0
    trap_freq: Optional[float] = None
    ion_freq: Optional[float] = None
    laser_freq: Optional[float] = None
    cavity_freq: Optional[float] = None
    a_mn: Optional[float] = None
    mu_mn: Optional[float] = None
    coeff_a: Optional[float] = None
    coeff_b: Optional[float] = None
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.ion_freq is None:
            return
        if self.laser_freq is not None and not math.isclose(
            self.laser_freq, self.ion_freq, rel_tol=RESONANCE_RTOL
        ):
            raise InvalidParams(
                f"Laser must be resonant with the ion: laser_freq={self.laser_freq} "
                f"!= ion_freq={self.ion_freq}"
            )
        if self.cavity_freq is not None and self.trap_freq is not None and not math.isclose(
            self.cavity_freq, self.ion_freq - self.trap_freq, rel_tol=RESONANCE_RTOL
        ):
            raise InvalidParams(
                "Cavity must sit on the red sideband: cavity_freq="
                f"{self.cavity_freq} != ion_freq - trap_freq = {self.ion_freq - self.trap_freq}"
            )

    @property
    def is_derived(self) -> bool:
        return self.a_mn is not None

    @classmethod
    def from_alpha(cls, omega_rabi: float, alpha: float, eta_c: float = 0.1, m: int = 1, n: int = 1, **kwargs) -> "SystemParams":
        """
        Build derived parameters from the Rabi frequency and the ratio mu_mn/a_mn.

        The coupling g is chosen so that a_mn = omega_rabi / sqrt(alpha^2 - 1);
        only the product g*eta_c enters the dynamics.

        Raises:
            InvalidParams: If alpha <= 1 or omega_rabi <= 0
        """
        if alpha is None or not alpha > 1.0:
            raise InvalidParams(f"alpha must be > 1 to fix a_mn from omega_rabi, got {alpha}")
        if not omega_rabi > 0.0:
            raise InvalidParams(f"omega_rabi must be > 0 when building from alpha, got {omega_rabi}")
        a_mn = omega_rabi / math.sqrt(alpha * alpha - 1.0)
        g = 2.0 * a_mn / (eta_c * math.sqrt(m * n))
        return derived_params(cls(omega_rabi=omega_rabi, ion_cavity_g=g, eta_c=eta_c, m=m, n=n, **kwargs))


@dataclass(frozen=True)
class ModelBasis:
    """Fixed ordering of the four model-space kets for labels (m, n)."""
    m: int = 1
    n: int = 1

    @property
    def kets(self) -> Tuple[Tuple[str, int, int], ...]:
        m, n = self.m, self.n
        return (("g", m - 1, n - 1), ("e", m - 1, n - 1), ("g", m, n), ("e", m, n))

    def index(self, ket: Tuple[str, int, int]) -> int:
        try:
            return self.kets.index(tuple(ket))
        except ValueError:
            raise InvalidParams(f"{ket} is not a model-space ket for m={self.m}, n={self.n}") from None

    def label(self, index: int) -> str:
        ion, k, l = self.kets[index]
        return f"|{ion},{k},{l}>"


@dataclass(frozen=True, eq=False)
class AnalyticEigenSystem:
    """
    Closed-form spectrum of the 4x4 model-space Hamiltonian.

    Attributes:
        energies: (E1, E2, E3, E4) = (mu-a, -(mu+a), mu+a, a-mu)
        transform: Real orthogonal matrix with transform[r, p] = <r|Phi_p>;
            row r expresses computational ket r in the eigenbasis
    """
    energies: np.ndarray
    transform: np.ndarray

    def eigenvector(self, p: int) -> np.ndarray:
        """Phi_p (p = 0..3) in the computational basis."""
        return self.transform[:, p]


def derived_params(raw: SystemParams) -> SystemParams:
    """
    Fill a_mn, mu_mn, A, B and alpha from the raw constants.

    a_mn = g*eta_c*sqrt(m*n)/2, mu_mn = sqrt(a_mn^2 + Omega^2),
    A^2 = (mu+Omega)/(4 mu), B^2 = (mu-Omega)/(4 mu), alpha = mu/a.
    Calling it on an already derived instance returns an equal instance.

    Raises:
        InvalidParams: If a frequency is negative, g or eta_c is not positive,
            or m, n < 1
    """
    problems = []
    if raw.omega_rabi < 0:
        problems.append(f"omega_rabi must be >= 0, got {raw.omega_rabi}")
    if not raw.ion_cavity_g > 0:
        problems.append(f"ion_cavity_g must be > 0, got {raw.ion_cavity_g}")
    if not raw.eta_c > 0:
        problems.append(f"eta_c must be > 0, got {raw.eta_c}")
    if raw.eta_l < 0:
        problems.append(f"eta_l must be >= 0, got {raw.eta_l}")
    for name in ("trap_freq", "ion_freq", "laser_freq", "cavity_freq"):
        value = getattr(raw, name)
        if value is not None and value < 0:
            problems.append(f"{name} must be >= 0, got {value}")
    if int(raw.m) != raw.m or raw.m < 1:
        problems.append(f"m must be an integer >= 1, got {raw.m}")
    if int(raw.n) != raw.n or raw.n < 1:
        problems.append(f"n must be an integer >= 1, got {raw.n}")
    if problems:
        raise InvalidParams("; ".join(problems))

    a_mn = 0.5 * raw.ion_cavity_g * raw.eta_c * math.sqrt(raw.m * raw.n)
    mu_mn = math.hypot(a_mn, raw.omega_rabi)
    coeff_a = math.sqrt((mu_mn + raw.omega_rabi) / (4.0 * mu_mn))
    coeff_b = math.sqrt(max(mu_mn - raw.omega_rabi, 0.0) / (4.0 * mu_mn))
    return replace(raw, a_mn=a_mn, mu_mn=mu_mn, coeff_a=coeff_a, coeff_b=coeff_b, alpha=mu_mn / a_mn)


def _require_derived(p: SystemParams) -> None:
    if not p.is_derived:
        raise InvalidParams("SystemParams must be passed through derived_params() first")


def build_h_is(p: SystemParams) -> np.ndarray:
    """
    4x4 model-space interaction Hamiltonian (hbar = 1).

    Couplings: Omega on |g,k,l> <-> |e,k,l>, and g*eta_c*sqrt(mn) = 2 a_mn on
    |e,m-1,n-1> <-> |g,m,n>.
    """
    _require_derived(p)
    omega, two_a = p.omega_rabi, 2.0 * p.a_mn
    return np.array(
        [
            [0.0, omega, 0.0, 0.0],
            [omega, 0.0, two_a, 0.0],
            [0.0, two_a, 0.0, omega],
            [0.0, 0.0, omega, 0.0],
        ],
        dtype=np.complex128,
    )


def analytic_eigensystem(p: SystemParams) -> AnalyticEigenSystem:
    """
    Closed-form eigenvalues and eigenvector transform of build_h_is(p).

    Eigenvector signs follow the published transform; nothing downstream
    depends on them.
    """
    _require_derived(p)
    mu, a = p.mu_mn, p.a_mn
    s = 1.0 / math.sqrt(2.0)
    plus = (p.coeff_a + p.coeff_b) * s
    minus = (p.coeff_a - p.coeff_b) * s
    transform = np.array(
        [
            [plus, minus, minus, -plus],
            [minus, -plus, plus, minus],
            [-minus, plus, plus, minus],
            [-plus, -minus, minus, -plus],
        ]
    )
    energies = np.array([mu - a, -(mu + a), mu + a, a - mu])
    return AnalyticEigenSystem(energies=energies, transform=transform)


def fock_index(ion: int, phonon: int, photon: int, phonon_cut: int, photon_cut: int) -> int:
    """Flat index of |ion, phonon, photon> in lexicographic (ion, phonon, photon) order."""
    return (ion * phonon_cut + phonon) * photon_cut + photon


def build_h_full(p: SystemParams, phonon_cut: int, photon_cut: int) -> np.ndarray:
    """
    Interaction Hamiltonian on the truncated Fock space.

    Dimension 2*phonon_cut*photon_cut; matrix elements Omega between
    |g,k,l> and |e,k,l>, and g*eta_c*sqrt(k*l) between |e,k-1,l-1> and |g,k,l>.

    Raises:
        CutoffTooSmall: If either cutoff is below 2
        InvalidParams: If p is not derived
    """
    _require_derived(p)
    if phonon_cut < 2 or photon_cut < 2:
        raise CutoffTooSmall(f"Fock cutoffs must be >= 2, got ({phonon_cut}, {photon_cut})")
    dim = 2 * phonon_cut * photon_cut
    h = np.zeros((dim, dim), dtype=np.complex128)
    coupling = p.ion_cavity_g * p.eta_c
    for k in range(phonon_cut):
        for l in range(photon_cut):
            g_idx = fock_index(0, k, l, phonon_cut, photon_cut)
            e_idx = fock_index(1, k, l, phonon_cut, photon_cut)
            h[g_idx, e_idx] = h[e_idx, g_idx] = p.omega_rabi
            if k >= 1 and l >= 1:
                lower = fock_index(1, k - 1, l - 1, phonon_cut, photon_cut)
                h[lower, g_idx] = h[g_idx, lower] = coupling * math.sqrt(k * l)
    return h


def model_space_indices(p: SystemParams, phonon_cut: int, photon_cut: int) -> np.ndarray:
    """Flat Fock indices of the four ModelBasis kets, in ModelBasis order."""
    if p.m >= phonon_cut or p.n >= photon_cut:
        raise CutoffTooSmall(
            f"Cutoffs ({phonon_cut}, {photon_cut}) do not contain the model space of m={p.m}, n={p.n}"
        )
    return np.array(
        [
            fock_index(ION_LABELS.index(ion), k, l, phonon_cut, photon_cut)
            for ion, k, l in ModelBasis(p.m, p.n).kets
        ],
        dtype=np.intp,
    )
