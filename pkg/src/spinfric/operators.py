"""Spin-chain Hamiltonian construction and Hermitian diagonalization.

The chain Hamiltonian is

    H(h) = -g sum_j sx_j sx_{j+1} - h sum_j sz_j + L sum_j sx_j

with periodic boundary conditions (site N+1 = site 1).  Site 1 is the
leftmost / most significant qubit, i.e. a single-site operator on site j is
I^(j-1) (x) op (x) I^(N-j) built with iterated Kronecker products; test
fixtures rely on this convention being bit-exact.

Only the transverse field h is time dependent, so every Hamiltonian in a
protocol shares the same field-independent part A = -g sum sx sx + L sum sx
and the same diagonal Z = sum sz: H(h) = A - h Z.  That split is what the
integrator kernels consume.
"""

from dataclasses import dataclass

import numpy as np

from .params import ChainParams

HERMITICITY_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
DEGENERACY_TOL = 1e-10

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


def pauli_string(ops: dict[int, np.ndarray], n_sites: int) -> np.ndarray:
    """Tensor product with single-site operators at the given sites.

    ``ops`` maps site index (1-based, site 1 leftmost) to a 2x2 matrix;
    all other sites carry the identity.
    """
    out = np.array([[1.0]])
    for site in range(1, n_sites + 1):
        op = ops.get(site)
        out = np.kron(out, op if op is not None else np.eye(2))
    return out


@dataclass(frozen=True)
class FieldSplit:
    """H(h) = a_matrix - h * diag(z_diag); a_matrix real symmetric."""

    a_matrix: np.ndarray
    z_diag: np.ndarray

    def hamiltonian(self, h: float) -> np.ndarray:
        return self.a_matrix - h * np.diag(self.z_diag)


def field_split(params: ChainParams) -> FieldSplit:
    """Build the field-independent part and the sz diagonal for a chain."""
    n, g, ell = params.n_sites, params.coupling, params.longitudinal
    dim = params.dim
    a = np.zeros((dim, dim))
    for j in range(1, n + 1):
        nxt = j % n + 1
        if nxt == j:  # N = 1: the periodic bond is sx^2 = identity
            a -= g * np.eye(dim)
        else:
            a -= g * pauli_string({j: _SX, nxt: _SX}, n)
        if ell != 0.0:
            a += ell * pauli_string({j: _SX}, n)
    # diagonal of sum_j sz_j: bit j of the basis index (0 = spin up)
    idx = np.arange(dim)
    z = np.zeros(dim)
    for j in range(n):
        z += 1.0 - 2.0 * ((idx >> (n - 1 - j)) & 1)
    return FieldSplit(a_matrix=a, z_diag=z)


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian operator on the chain Hilbert space."""

    matrix: np.ndarray

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        scale = np.abs(m).max()
        if scale > 0:
            dev = np.abs(m - m.conj().T).max()
            if dev > HERMITICITY_TOL * scale:
                raise ValueError(
                    f"matrix is not Hermitian: |H - H+| = {dev:.3e} "
                    f"exceeds {HERMITICITY_TOL:.0e} * max|entry|")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_hamiltonian(params: ChainParams, h: float) -> HermitianOperator:
    """Chain Hamiltonian at transverse field strength h.

    Parameters
    ----------
    params : ChainParams
        Chain definition (N, g, L); capacity is checked at construction.
    h : float
        Transverse field strength (the protocols here use h > g, but any
        real value is accepted).

    Returns
    -------
    HermitianOperator
        Dense 2^N x 2^N Hermitian matrix.
    """
    split = field_split(params)
    return HermitianOperator(matrix=split.hamiltonian(h))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns).

    Within degenerate groups (eigenvalues closer than DEGENERACY_TOL times
    the spectral radius) the eigenvector basis is arbitrary up to rotation;
    ``degenerate_blocks`` exposes the grouping so downstream projections can
    refine it deterministically.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues).max())

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def degenerate_blocks(self) -> list[slice]:
        """Maximal index ranges of (chained) near-degenerate eigenvalues."""
        tol = DEGENERACY_TOL * max(self.spectral_radius, 1e-300)
        blocks = []
        start = 0
        e = self.eigenvalues
        for i in range(1, self.dim + 1):
            if i == self.dim or e[i] - e[i - 1] > tol:
                blocks.append(slice(start, i))
                start = i
        return blocks


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real > 0."""
    v = vectors.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-8)
        lead = nz[0] if nz.size else int(np.argmax(np.abs(col)))
        ph = col[lead]
        if np.abs(ph) > 0:
            v[:, k] = col * (np.conj(ph) / np.abs(ph))
    return v


def diagonalize(op: HermitianOperator) -> SpectralDecomposition:
    """Full spectral decomposition with a deterministic basis convention.

    Eigenvalues ascend; every eigenvector's leading entry is made real and
    positive, and within each degenerate block the columns are ordered
    lexicographically (by the index, then value, of their leading entry) so
    repeated runs produce identical matrices.

    Raises
    ------
    RuntimeError
        If the eigensolver fails to converge or the reconstruction residual
        exceeds RECONSTRUCTION_TOL times the spectral radius.
    """
    try:
        e, v = np.linalg.eigh(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver did not converge: {exc}") from exc
    v = _fix_phases(v)
    spec = SpectralDecomposition(eigenvalues=e, eigenvectors=v)
    for blk in spec.degenerate_blocks():
        if blk.stop - blk.start > 1:
            cols = v[:, blk]
            keys = []
            for k in range(cols.shape[1]):
                nz = np.flatnonzero(np.abs(cols[:, k]) > 1e-8)
                lead = int(nz[0]) if nz.size else 0
                keys.append((lead, -np.real(cols[lead, k])))
            order = sorted(range(cols.shape[1]), key=lambda k: keys[k])
            v[:, blk] = cols[:, order]
    scale = max(float(np.abs(e).max()), 1e-300)
    resid = np.linalg.norm(spec.reconstruct() - op.matrix) / scale
    if resid > RECONSTRUCTION_TOL * np.sqrt(op.dim):
        raise RuntimeError(
            f"spectral reconstruction residual {resid:.3e} too large")
    return spec


def translation_operator(n_sites: int) -> np.ndarray:
    """One-site cyclic shift permutation matrix (site j -> j+1)."""
    dim = 2 ** n_sites
    t = np.zeros((dim, dim))
    for b in range(dim):
        # rotate the bit string right by one (site 1 is the MSB)
        shifted = ((b >> 1) | ((b & 1) << (n_sites - 1))) & (dim - 1)
        t[shifted, b] = 1.0
    return t
