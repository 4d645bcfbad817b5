"""
Bipartite entanglement of the ion (A), phonon (B) and photon (C) qubits.

The model space embeds into the three-qubit space |A B C> (flat index
4A + 2B + C) with |g,m-1,n-1> -> |000>, |e,m-1,n-1> -> |100>,
|g,m,n> -> |011> and |e,m,n> -> |111>.
"""

import numpy as np
from dataclasses import dataclass
from typing import Tuple

from .errors import DimensionMismatch
from .evolution import DensityOperator, trusted_density
from .linalg import as_square, hermitian_eigvals

SUBSYSTEMS = ("A", "B", "C")
NEGATIVITY_FLOOR = -1e-10

TRIPARTITE_TAG = "tripartite"

_KEEP_SUBSCRIPTS = {
    "A": "abcdbc->ad",
    "B": "abcaec->be",
    "C": "abcabf->cf",
}


@dataclass(frozen=True)
class TripartiteIndex:
    """Qubit dimensions of A, B, C and the model-space embedding."""
    d_a: int = 2
    d_b: int = 2
    d_c: int = 2
    embed: Tuple[int, int, int, int] = (0, 4, 3, 7)

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.d_a, self.d_b, self.d_c)

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b * self.d_c

    def flat(self, a: int, b: int, c: int) -> int:
        return (a * self.d_b + b) * self.d_c + c

    def axis(self, subsystem: str) -> int:
        try:
            return SUBSYSTEMS.index(subsystem)
        except ValueError:
            raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got '{subsystem}'") from None


DEFAULT_INDEX = TripartiteIndex()


def _require_dim(rho: DensityOperator, dim: int) -> None:
    if rho.dim != dim:
        raise DimensionMismatch(f"Expected a {dim}x{dim} state, got dimension {rho.dim}")


def _as_matrix(rho, dim: int) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityOperator) else as_square(rho)
    if m.shape[0] != dim:
        raise DimensionMismatch(f"Expected a {dim}x{dim} matrix, got dimension {m.shape[0]}")
    return m


def embed_tripartite(rho4: DensityOperator, idx: TripartiteIndex = DEFAULT_INDEX) -> DensityOperator:
    """Place a model-space state on its 4-dimensional support in the 8-dim qubit space."""
    _require_dim(rho4, 4)
    out = np.zeros((idx.dim, idx.dim), dtype=np.complex128)
    embed = np.asarray(idx.embed)
    out[np.ix_(embed, embed)] = rho4.matrix
    return trusted_density(out, TRIPARTITE_TAG)


def partial_transpose(rho, idx: TripartiteIndex = DEFAULT_INDEX, subsystem: str = "A") -> np.ndarray:
    """
    Transpose the named subsystem's indices, leaving the other two alone.

    <i,m,n| rho |j,r,s>  ->  <j,m,n| rho^{T_A} |i,r,s>  (for subsystem A)

    Raises:
        DimensionMismatch: If rho is not 8x8
        ValueError: For an unknown subsystem
    """
    m = _as_matrix(rho, idx.dim)
    k = idx.axis(subsystem)
    tensor = m.reshape(idx.dims + idx.dims)
    swapped = np.swapaxes(tensor, k, k + 3)
    return np.ascontiguousarray(swapped).reshape(idx.dim, idx.dim)


def negativity(rho, idx: TripartiteIndex = DEFAULT_INDEX, subsystem: str = "A") -> float:
    """
    Sum of |lambda| over the negative eigenvalues of rho^{T_X}.

    Eigenvalues in (-1e-10, 0) count as zero.

    Example:
        >>> ghz = embed_tripartite(GhzTarget.minus().projector())
        >>> negativity(ghz, subsystem="A")  # 0.5
    """
    values = hermitian_eigvals(partial_transpose(rho, idx, subsystem))
    negative = values[values < NEGATIVITY_FLOOR]
    return float(-negative.sum()) if negative.size else 0.0


def reduced_density(rho: DensityOperator, idx: TripartiteIndex = DEFAULT_INDEX, keep: str = "A") -> DensityOperator:
    """Partial trace over the two subsystems other than `keep`."""
    _require_dim(rho, idx.dim)
    idx.axis(keep)
    tensor = rho.matrix.reshape(idx.dims + idx.dims)
    return trusted_density(np.einsum(_KEEP_SUBSCRIPTS[keep], tensor), keep)


def linear_entropy(rho_red: DensityOperator) -> float:
    """S_l = d/(d-1) * (1 - Tr rho^2), clipped to [0, 1]."""
    d = rho_red.dim
    if d < 2:
        raise DimensionMismatch(f"Linear entropy needs dimension >= 2, got {d}")
    m = rho_red.matrix
    value = d / (d - 1.0) * (1.0 - float(np.einsum("ij,ji->", m, m).real))
    return min(max(value, 0.0), 1.0)
