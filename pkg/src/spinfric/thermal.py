"""Gibbs states, entropies, diagonal projection, effective temperatures.

Entropies are in nats throughout (natural logarithm).  Temperatures use the
same units as energies (k_B = 1); ``math.inf`` is the infinite-temperature
sentinel and 0.0 the zero-temperature one.

All functions are pure and operate on immutable inputs.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .operators import SpectralDecomposition

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
PSD_HARD = 1e-8
ENTROPY_MATCH_TOL = 1e-10

_ROLES = ("", "initial", "evolved", "adiabatic", "thermal", "diagonal")


@dataclass(frozen=True)
class DensityMatrix:
    """Dense density matrix with physics invariants checked on creation.

    ``role`` is an optional tag recording how the state was produced
    ("initial", "evolved", "adiabatic", "thermal", "diagonal").
    """

    matrix: np.ndarray
    role: str = ""

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got {m.shape}")
        if self.role not in _ROLES:
            raise ValueError(f"unknown role tag {self.role!r}")
        dev = np.abs(m - m.conj().T).max()
        if dev > 1e-10:
            raise ValueError(f"density matrix not Hermitian (|r - r+| = {dev:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace = {tr!r} differs from 1 beyond {TRACE_TOL}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> None:
        """Full invariant check including positive semidefiniteness."""
        lam = np.linalg.eigvalsh(self.matrix)
        if lam.min() < -PSD_TOL:
            raise ValueError(
                f"density matrix not PSD: min eigenvalue {lam.min():.3e}")

    def with_role(self, role: str) -> "DensityMatrix":
        return DensityMatrix(matrix=self.matrix, role=role)


@dataclass(frozen=True)
class PopulationDistribution:
    """Populations p_n indexed against a spectrum's ascending-energy order."""

    values: np.ndarray

    def __post_init__(self):
        p = self.values
        if p.min() < -1e-12:
            raise ValueError(f"negative population {p.min():.3e}")
        if abs(p.sum() - 1.0) > TRACE_TOL:
            raise ValueError(f"populations sum to {p.sum()!r}, not 1")

    def entropy(self) -> float:
        return shannon_entropy(self.values)


def shannon_entropy(p: np.ndarray) -> float:
    """-sum p ln p with the 0 ln 0 := 0 convention; tiny negatives clipped."""
    q = np.clip(np.asarray(p, dtype=float), 0.0, None)
    nz = q[q > 0]
    return float(-(nz * np.log(nz)).sum()) if nz.size else 0.0


def gibbs_populations(spec: SpectralDecomposition, temperature: float) -> np.ndarray:
    """Boltzmann weights e^{-E_n/T} normalized, computed with max-shift."""
    if temperature == math.inf:
        return np.full(spec.dim, 1.0 / spec.dim)
    if not temperature > 0:
        raise ValueError(f"temperature must be > 0, got {temperature}")
    e = spec.eigenvalues
    w = np.exp(-(e - e[0]) / temperature)
    return w / w.sum()


def gibbs_state(spec: SpectralDecomposition, temperature: float) -> DensityMatrix:
    """Thermal state e^{-H/T} / Z in the given spectral decomposition.

    ``temperature = math.inf`` returns the maximally mixed state.  The
    result commutes with the decomposed operator by construction.
    """
    p = gibbs_populations(spec, temperature)
    v = spec.eigenvectors
    rho = (v * p) @ v.conj().T
    return DensityMatrix(matrix=rho, role="thermal")


def gibbs_entropy(spec: SpectralDecomposition, temperature: float) -> float:
    """Von Neumann entropy of the Gibbs state, from the spectrum alone."""
    return shannon_entropy(gibbs_populations(spec, temperature))


def gibbs_mean_energy(spec: SpectralDecomposition, temperature: float) -> float:
    return float(gibbs_populations(spec, temperature) @ spec.eigenvalues)


def state_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues of a density matrix, clamped per the PSD policy.

    Values in [-1e-10, 0) are numerical noise and clamp to 0; anything below
    -1e-8 is a hard error.
    """
    lam = np.linalg.eigvalsh(rho.matrix)
    if lam.min() < -PSD_HARD:
        raise ValueError(
            f"density matrix PSD violation: eigenvalue {lam.min():.3e}")
    return np.clip(lam, 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr[rho ln rho] in nats."""
    return shannon_entropy(state_eigenvalues(rho))


def project_diagonal(
    rho: DensityMatrix, basis: SpectralDecomposition
) -> tuple[DensityMatrix, PopulationDistribution]:
    """Project onto the energy eigenbasis, refining degenerate blocks.

    Off-diagonal elements between distinct eigenvalue blocks are dropped;
    within each degenerate block the restriction of rho is kept intact (it
    is rediagonalized only to read off populations), which makes the result
    and its entropy independent of the arbitrary intra-block basis choice.

    Returns the projected state and its populations in ascending-energy
    order (descending population inside each degenerate block).
    """
    if rho.dim != basis.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {basis.dim}")
    v = basis.eigenvectors
    b = v.conj().T @ rho.matrix @ v
    blocks = basis.degenerate_blocks()
    pops = np.empty(basis.dim)
    out = np.zeros_like(b)
    for blk in blocks:
        if blk.stop - blk.start == 1:
            out[blk, blk] = b[blk, blk].real
            pops[blk.start] = b[blk.start, blk.start].real
        else:
            sub = b[blk, blk]
            sub = 0.5 * (sub + sub.conj().T)
            out[blk, blk] = sub
            lam = np.linalg.eigvalsh(sub)
            pops[blk] = lam[::-1]  # descending within the block
    projected = v @ out @ v.conj().T
    projected = 0.5 * (projected + projected.conj().T)
    return (
        DensityMatrix(matrix=projected, role="diagonal"),
        PopulationDistribution(values=np.clip(pops, -1e-12, None)),
    )


def diagonal_entropy(rho: DensityMatrix, basis: SpectralDecomposition) -> float:
    """Shannon entropy of the state's populations in the energy eigenbasis."""
    _, pops = project_diagonal(rho, basis)
    return pops.entropy()


def _bisect_temperature(f, target: float, lo: float = 1e-3, hi: float = 1e3,
                        tol: float = ENTROPY_MATCH_TOL) -> float:
    """Solve f(T) = target for monotone increasing f by bracketed bisection.

    The initial bracket [lo, hi] expands geometrically up to [1e-6, 1e6]
    before giving up.
    """
    while f(lo) > target:
        lo *= 1e-1
        if lo < 1e-6:
            raise RuntimeError("temperature bracket failure (low side)")
    while f(hi) < target:
        hi *= 1e1
        if hi > 1e6:
            raise RuntimeError("temperature bracket failure (high side)")
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        val = f(mid)
        if abs(val - target) < tol:
            return mid
        if val < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * hi:
            break
    return math.sqrt(lo * hi)


def effective_temperature(target: DensityMatrix,
                          spec_f: SpectralDecomposition) -> float:
    """Temperature whose Gibbs state matches the target's entropy.

    Returns 0.0 for a pure target and math.inf for a maximally mixed one;
    otherwise solves S(gibbs(T)) = S(target) to ENTROPY_MATCH_TOL by
    bisection (S is strictly monotone in T).
    """
    s = von_neumann_entropy(target)
    return temperature_from_entropy(s, spec_f)


def temperature_from_entropy(s: float, spec_f: SpectralDecomposition) -> float:
    s_max = math.log(spec_f.dim)
    if s <= 1e-12:
        return 0.0
    if s >= s_max - 1e-12:
        return math.inf
    return _bisect_temperature(lambda t: gibbs_entropy(spec_f, t), s)


def mean_energy_temperature(target_energy: float,
                            spec_f: SpectralDecomposition) -> float:
    """Temperature whose Gibbs state has the given mean energy (diagnostic).

    The mean energy is strictly monotone in T between the ground energy
    (T -> 0) and the spectral average (T -> inf); targets at or beyond the
    limits return the corresponding sentinel.
    """
    e = spec_f.eigenvalues
    e_min, e_avg = float(e[0]), float(e.mean())
    scale = max(abs(e_min), abs(e_avg), 1.0)
    if target_energy <= e_min + 1e-12 * scale:
        return 0.0
    if target_energy >= e_avg - 1e-12 * scale:
        return math.inf
    return _bisect_temperature(
        lambda t: gibbs_mean_energy(spec_f, t), target_energy)
