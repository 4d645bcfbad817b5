import numpy as np
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .errors import DimensionMismatch, NoConvergence, NonHermitianInput

HERMITIAN_RTOL = 1e-12
OFF_DIAGONAL_RTOL = 1e-13
NEGLIGIBLE_OFF_DIAGONAL = 1e-300
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class HermitianEigenSystem:
    """
    Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Attributes:
        values: Real eigenvalues, sorted ascending
        vectors: Unitary matrix whose k-th column belongs to values[k]
    """
    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Return V·diag(λ)·V†."""
        return (self.vectors * self.values) @ self.vectors.conj().T

    def propagator(self, scale: float) -> np.ndarray:
        """Return V·diag(exp(i·scale·λ))·V† without re-diagonalising."""
        phases = np.exp(1j * scale * self.values)
        return (self.vectors * phases) @ self.vectors.conj().T


def as_square(matrix) -> np.ndarray:
    """
    Coerce input to a square complex128 array.

    Raises:
        DimensionMismatch: If the input is not a non-empty square 2-D array
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"Expected a non-empty square matrix, got shape {m.shape}")
    return m


def is_hermitian(matrix: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    m = np.asarray(matrix)
    return bool(np.linalg.norm(m - m.conj().T) <= rtol * np.linalg.norm(m))


def _require_hermitian(matrix) -> np.ndarray:
    m = as_square(matrix)
    if not is_hermitian(m):
        deviation = np.linalg.norm(m - m.conj().T)
        raise NonHermitianInput(
            f"Matrix is not Hermitian: ||M - M^H||_F = {deviation:.3e} "
            f"exceeds {HERMITIAN_RTOL:g} * ||M||_F"
        )
    return 0.5 * (m + m.conj().T)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """
    Tournament schedule covering every index pair (p < q) once per sweep.

    Pairs inside one round are disjoint, so their rotations commute and can be
    applied as a single block-diagonal unitary.
    """
    players = list(range(n + n % 2))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [
            (min(players[i], players[size - 1 - i]), max(players[i], players[size - 1 - i]))
            for i in range(size // 2)
        ]
        pairs = [(p, q) for p, q in pairs if q < n]
        p_idx = np.array([p for p, _ in pairs], dtype=np.intp)
        q_idx = np.array([q for _, q in pairs], dtype=np.intp)
        rounds.append((p_idx, q_idx))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotation(a: np.ndarray, p: np.ndarray, q: np.ndarray):
    """
    Entries of the block-diagonal unitary G that zeroes (G† a G)[p, q].

    Returns (g_pp, g_pq, g_qp, g_qq), one value per pair. Entries with
    |a_pq| <= NEGLIGIBLE_OFF_DIAGONAL count as zero. The tangent is formed
    from |a_pq| and the diagonal gap directly, so subnormal entries cannot
    overflow.
    """
    apq = a[p, q]
    mag = np.abs(apq)
    active = mag > NEGLIGIBLE_OFF_DIAGONAL
    phase = np.where(active, np.exp(1j * np.angle(apq)), 1.0)

    half_gap = 0.5 * (a[q, q].real - a[p, p].real)
    sign = np.where(half_gap >= 0.0, 1.0, -1.0)
    denom = np.abs(half_gap) + np.hypot(mag, half_gap)
    t = np.where(active, sign * mag / np.where(active, denom, 1.0), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return c + 0j, s + 0j, -s * np.conj(phase), c * np.conj(phase)


def _rotate_columns(m: np.ndarray, p: np.ndarray, q: np.ndarray, g) -> None:
    g_pp, g_pq, g_qp, g_qq = g
    mp, mq = m[:, p], m[:, q]
    m[:, p] = mp * g_pp + mq * g_qp
    m[:, q] = mp * g_pq + mq * g_qq


def _rotate_rows(m: np.ndarray, p: np.ndarray, q: np.ndarray, g) -> None:
    g_pp, g_pq, g_qp, g_qq = (np.conj(x)[:, None] for x in g)
    mp, mq = m[p, :], m[q, :]
    m[p, :] = g_pp * mp + g_qp * mq
    m[q, :] = g_pq * mp + g_qq * mq


def _checked_off_norm(a: np.ndarray) -> float:
    off = _off_norm(a)
    if not np.isfinite(off) or not np.isfinite(a.diagonal()).all():
        raise NoConvergence("Jacobi iteration produced non-finite entries")
    return off


def _jacobi(m: np.ndarray, want_vectors: bool):
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    if n == 1:
        return a.diagonal().real.copy(), v

    threshold = OFF_DIAGONAL_RTOL * np.linalg.norm(a)
    schedule = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        if _checked_off_norm(a) <= threshold:
            break
        for p, q in schedule:
            g = _rotation(a, p, q)
            _rotate_columns(a, p, q, g)
            _rotate_rows(a, p, q, g)
            if want_vectors:
                _rotate_columns(v, p, q, g)
        a = 0.5 * (a + a.conj().T)
    else:
        off = _checked_off_norm(a)
        if off > threshold:
            raise NoConvergence(
                f"Jacobi iteration did not converge within {MAX_SWEEPS} sweeps "
                f"(off-diagonal norm {off:.3e}, target {threshold:.3e})"
            )
    return a.diagonal().real.copy(), v


def hermitian_eigensystem(matrix) -> HermitianEigenSystem:
    """
    Diagonalise a Hermitian matrix with cyclic complex Jacobi rotations.

    Each sweep visits every off-diagonal pair once, in a round-robin order
    whose rounds consist of disjoint pairs; a round is applied as one unitary
    similarity transform. Iteration stops when the off-diagonal Frobenius
    norm drops below 1e-13·||M||_F.

    Args:
        matrix: Square complex (or real) matrix, Hermitian to 1e-12 relative

    Returns:
        HermitianEigenSystem with ascending eigenvalues and orthonormal columns

    Raises:
        NonHermitianInput: If the Hermiticity check fails
        NoConvergence: If 100 sweeps do not reach the off-diagonal threshold

    Example:
        >>> eig = hermitian_eigensystem(np.array([[0, 1], [1, 0]]))
        >>> eig.values
        array([-1.,  1.])
    """
    m = _require_hermitian(matrix)
    values, vectors = _jacobi(m, want_vectors=True)
    order = np.argsort(values, kind="stable")
    return HermitianEigenSystem(values=values[order], vectors=vectors[:, order])


def hermitian_eigvals(matrix) -> np.ndarray:
    """Ascending eigenvalues only; skips accumulating the eigenvectors."""
    m = _require_hermitian(matrix)
    values, _ = _jacobi(m, want_vectors=False)
    return np.sort(values)


def hermitian_expm(matrix, scale: float) -> np.ndarray:
    """
    Matrix exponential exp(i·scale·M) of a Hermitian matrix.

    Args:
        matrix: Hermitian generator M
        scale: Real factor; use scale=-t for the propagator exp(-iHt)

    Returns:
        Unitary matrix V·diag(exp(i·scale·λ))·V†

    Raises:
        NonHermitianInput, NoConvergence: From hermitian_eigensystem
    """
    return hermitian_eigensystem(matrix).propagator(scale)
