"""
Decohered system state under pure dephasing.

In the eigenbasis {Phi_p} of the model-space Hamiltonian the bath leaves the
populations alone and damps every coherence:

    rho_ij(t) = rho_ij(0) * exp(-(E_i - E_j)^2 Gamma(t) / 4)
                          * exp(-i [(E_i - E_j) t + (E_i^2 - E_j^2) C(t)])
"""

import numpy as np
from dataclasses import dataclass
from typing import Optional, Tuple

from .bath import DephasingProfile
from .errors import DimensionMismatch, InvalidState
from .linalg import as_square, hermitian_eigensystem, hermitian_eigvals, hermitian_expm, is_hermitian
from .model import AnalyticEigenSystem, ModelBasis, SystemParams, analytic_eigensystem

STATE_HERMITIAN_RTOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-10

MODEL_BASIS_TAG = "model"


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Trace-one positive semidefinite matrix tagged with its basis ordering.

    Construction validates the matrix: Hermitian to 1e-12 relative, trace
    1 +- 1e-10, eigenvalues >= -1e-10. Eigenvalues in [-1e-10, 0) are clamped
    to zero and the trace renormalised; anything more negative is rejected.

    Attributes:
        matrix: Square complex128 array
        basis_tag: Name of the basis ordering ("model", "tripartite", "fock", ...)

    Raises:
        InvalidState: If any of the checks above fails
    """
    matrix: np.ndarray
    basis_tag: str = MODEL_BASIS_TAG

    def __post_init__(self):
        try:
            m = as_square(self.matrix)
        except DimensionMismatch as exc:
            raise InvalidState(str(exc)) from exc
        if not np.isfinite(m).all():
            raise InvalidState("Density operator has non-finite entries")
        if not is_hermitian(m, STATE_HERMITIAN_RTOL):
            raise InvalidState("Density operator is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        trace = np.trace(m).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidState(f"Density operator must have unit trace, got {trace:.12g}")
        lowest = hermitian_eigvals(m)[0]
        if lowest < EIGENVALUE_FLOOR:
            raise InvalidState(f"Density operator has a negative eigenvalue {lowest:.3e}")
        if lowest < 0:
            eig = hermitian_eigensystem(m)
            values = np.clip(eig.values, 0.0, None)
            m = (eig.vectors * (values / values.sum())) @ eig.vectors.conj().T
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def pure(cls, state, basis_tag: str = MODEL_BASIS_TAG) -> "DensityOperator":
        """Projector |psi><psi| of a normalised state vector."""
        psi = np.asarray(state, dtype=np.complex128).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidState("State vector must be non-zero")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), basis_tag)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigvals(self.matrix)


def trusted_density(matrix: np.ndarray, basis_tag: str) -> DensityOperator:
    """Wrap a matrix known to be a valid state (e.g. an isometric image of one)."""
    rho = object.__new__(DensityOperator)
    m = np.array(matrix, dtype=np.complex128)
    m.setflags(write=False)
    object.__setattr__(rho, "matrix", m)
    object.__setattr__(rho, "basis_tag", basis_tag)
    return rho


@dataclass(frozen=True)
class InitialState:
    """
    Pure initial state: one of the four model-space kets.

    Attributes:
        ket: (ion, phonon, photon) label, e.g. ("g", 0, 0); None selects
            |g, m-1, n-1>
    """
    ket: Optional[Tuple[str, int, int]] = None

    def index(self, basis: ModelBasis) -> int:
        if self.ket is None:
            return 0
        try:
            return basis.index(self.ket)
        except ValueError as exc:
            raise InvalidState(str(exc)) from exc

    def density(self, basis: ModelBasis) -> DensityOperator:
        psi = np.zeros(4, dtype=np.complex128)
        psi[self.index(basis)] = 1.0
        return DensityOperator.pure(psi)


def _require_model_dim(rho: DensityOperator) -> None:
    if rho.dim != 4:
        raise DimensionMismatch(f"Expected a 4x4 model-space state, got dimension {rho.dim}")


def _to_eigenbasis(rho: np.ndarray, transform: np.ndarray) -> np.ndarray:
    return transform.T @ rho @ transform


def _from_eigenbasis(r: np.ndarray, transform: np.ndarray) -> np.ndarray:
    return transform @ r @ transform.T


def dephasing_factors(eig: AnalyticEigenSystem, gamma: float, c: float, t: float) -> np.ndarray:
    """Elementwise multiplier applied to eigenbasis coherences at time t."""
    e = eig.energies
    diff = e[:, None] - e[None, :]
    diff_sq = (e * e)[:, None] - (e * e)[None, :]
    return np.exp(-0.25 * diff * diff * gamma) * np.exp(-1j * (diff * t + diff_sq * c))


def evolve_dephasing(rho0: DensityOperator, eig: AnalyticEigenSystem, profile: DephasingProfile, t: float) -> DensityOperator:
    """
    Apply the pure-dephasing map at time t.

    Args:
        rho0: Initial 4x4 state in the model basis
        eig: Analytic eigensystem supplying E_p and the transform
        profile: Gamma/C samples; t must be a grid point unless the profile
            interpolates
        t: Time in the profile's unit system

    Returns:
        DensityOperator in the model basis

    Raises:
        DimensionMismatch: If rho0 is not 4x4
        GridMiss: If the profile cannot serve t
        InvalidState: If the result fails validation
    """
    _require_model_dim(rho0)
    gamma, c, _ = profile.at(t)
    if t == 0:
        return rho0
    r = _to_eigenbasis(rho0.matrix, eig.transform)
    r = r * dephasing_factors(eig, gamma, c, t)
    return DensityOperator(_from_eigenbasis(r, eig.transform), rho0.basis_tag)


def closed_form_eigenbasis(params: SystemParams, gamma: float, phi: float, t: float) -> np.ndarray:
    """
    Eigenbasis matrix of the decohered state for initial |g, m-1, n-1>.

    With p = A + B and q = A - B the populations are p^2/2, q^2/2, q^2/2, p^2/2;
    coherences decay with exp(-(mu-+a)^2 Gamma), exp(-mu^2 Gamma) and
    exp(-a^2 Gamma) and carry the bath phase phi = 4 mu a C.
    """
    mu, a = params.mu_mn, params.a_mn
    p = params.coeff_a + params.coeff_b
    q = params.coeff_a - params.coeff_b
    p2, q2, pq = 0.5 * p * p, 0.5 * q * q, 0.5 * p * q

    r = np.zeros((4, 4), dtype=np.complex128)
    r[0, 0] = r[3, 3] = p2
    r[1, 1] = r[2, 2] = q2
    r[0, 3] = -p2 * np.exp(-((mu - a) ** 2) * gamma) * np.exp(-2j * (mu - a) * t)
    r[1, 2] = q2 * np.exp(-((mu + a) ** 2) * gamma) * np.exp(2j * (mu + a) * t)
    mu_decay = np.exp(-(mu * mu) * gamma)
    r[0, 1] = pq * mu_decay * np.exp(-1j * (2 * mu * t - phi))
    r[2, 3] = -pq * mu_decay * np.exp(-1j * (2 * mu * t + phi))
    a_decay = np.exp(-(a * a) * gamma)
    r[0, 2] = pq * a_decay * np.exp(1j * (2 * a * t + phi))
    r[1, 3] = -pq * a_decay * np.exp(1j * (2 * a * t - phi))
    upper = np.triu_indices(4, 1)
    r[upper[1], upper[0]] = np.conj(r[upper])
    return r


def rho_closed_form(params: SystemParams, profile: DephasingProfile, t: float) -> DensityOperator:
    """
    Decohered state for initial |g, m-1, n-1>, evaluated term by term.

    Equals evolve_dephasing() from that initial state; the two are kept
    separate so each checks the other.

    Raises:
        GridMiss: If the profile cannot serve t
    """
    gamma, _, phi = profile.at(t)
    r = closed_form_eigenbasis(params, gamma, phi, t)
    transform = analytic_eigensystem(params).transform
    return DensityOperator(_from_eigenbasis(r, transform))


def unitary_evolve(rho0: DensityOperator, h: np.ndarray, t: float) -> DensityOperator:
    """
    Closed-system evolution U rho0 U^dagger with U = exp(-i h t).

    Raises:
        DimensionMismatch: If h and rho0 differ in dimension
        NonHermitianInput, NoConvergence: From the eigensolver
    """
    h = as_square(h)
    if h.shape[0] != rho0.dim:
        raise DimensionMismatch(f"Hamiltonian dimension {h.shape[0]} != state dimension {rho0.dim}")
    if t == 0:
        return rho0
    u = hermitian_expm(h, -t)
    return DensityOperator(u @ rho0.matrix @ u.conj().T, rho0.basis_tag)


def dephased_limit(rho0: DensityOperator, eig: AnalyticEigenSystem) -> DensityOperator:
    """Long-time state: eigenbasis coherences between distinct energies removed."""
    _require_model_dim(rho0)
    r = _to_eigenbasis(rho0.matrix, eig.transform)
    e = eig.energies
    degenerate = np.isclose(e[:, None], e[None, :], rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(e).max())))
    return DensityOperator(_from_eigenbasis(np.where(degenerate, r, 0.0), eig.transform), rho0.basis_tag)


def eigenbasis_matrix(rho: DensityOperator, eig: AnalyticEigenSystem) -> np.ndarray:
    """<Phi_i|rho|Phi_j> for a model-space state."""
    _require_model_dim(rho)
    return _to_eigenbasis(rho.matrix, eig.transform)


def purity(rho: DensityOperator) -> float:
    m = rho.matrix
    return float(np.einsum("ij,ji->", m, m).real)
