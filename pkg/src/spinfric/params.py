"""Problem definition types: chain, drive protocol, integrator settings.

Units: hbar = k_B = 1.  The Ising coupling g sets the energy scale, so
energies and temperatures are naturally quoted in units of g and times in
units of 1/g.  All types are frozen dataclasses and safe to share between
threads.
"""

import math
from dataclasses import dataclass

#: Largest chain buildable with dense matrices (2^12 = 4096).
MAX_SITES = 12


class CapacityError(ValueError):
    """Requested chain exceeds the dense-matrix capacity limit."""


@dataclass(frozen=True)
class ChainParams:
    """Static definition of the spin chain.

    Parameters
    ----------
    n_sites : int
        Number of spins N (1 <= N <= MAX_SITES for dense construction).
    coupling : float
        Ising interaction strength g > 0 (the unit of energy).
    longitudinal : float
        Longitudinal field strength L >= 0.  L = 0 is the integrable chain.
    """

    n_sites: int
    coupling: float = 1.0
    longitudinal: float = 0.0

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        if self.n_sites > MAX_SITES:
            raise CapacityError(
                f"n_sites = {self.n_sites} exceeds dense capacity "
                f"(max {MAX_SITES}); dimension 2^N would be too large")
        if not self.coupling > 0:
            raise ValueError(f"coupling must be > 0, got {self.coupling}")
        if self.longitudinal < 0:
            raise ValueError(
                f"longitudinal must be >= 0, got {self.longitudinal}")

    @property
    def dim(self) -> int:
        return 2 ** self.n_sites


@dataclass(frozen=True)
class RampProtocol:
    """Drive specification h(t) for the transverse field.

    A linear ramp runs h from ``h_start`` to ``h_start + delta_h`` over the
    duration ``tau``; ``tau = 0`` denotes a sudden quench (the state is
    unchanged, only the Hamiltonian jumps).
    """

    h_start: float
    delta_h: float
    tau: float
    shape: str = "linear"

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.shape != "linear":
            raise ValueError(f"unsupported ramp shape {self.shape!r}")

    @property
    def h_final(self) -> float:
        return self.h_start + self.delta_h


def ramp_value(protocol: RampProtocol, t: float) -> float:
    """Instantaneous field h(t), with exact endpoints.

    For a sudden quench (tau = 0) the only admissible time is t = 0 and the
    post-quench value is returned.
    """
    if t < 0 or t > protocol.tau:
        raise ValueError(
            f"t = {t} outside protocol window [0, {protocol.tau}]")
    if protocol.tau == 0:
        return protocol.h_final
    if t == protocol.tau:
        return protocol.h_final
    return protocol.h_start + (t / protocol.tau) * protocol.delta_h


@dataclass(frozen=True)
class EvolutionConfig:
    """Integrator settings.

    ``step_dt = None`` selects the default min(1e-3/g, tau/1000) per run.
    ``unitarity_tol`` bounds ||U+U - 1||_F / dim of the returned propagator.
    ``adiabatic_tau`` is the long duration used for the adiabatic reference.
    """

    step_dt: float | None = None
    unitarity_tol: float = 1e-9
    adiabatic_tau: float = 100.0

    def __post_init__(self):
        if self.step_dt is not None and not self.step_dt > 0:
            raise ValueError(f"step_dt must be > 0, got {self.step_dt}")
        if self.unitarity_tol < 1e-12:
            raise ValueError("unitarity_tol below 1e-12 is not resolvable")
        if not self.adiabatic_tau > 0:
            raise ValueError("adiabatic_tau must be > 0")

    def dt_for(self, tau: float, g: float = 1.0) -> float:
        """Actual step size for a run of duration tau."""
        if self.step_dt is not None:
            return min(self.step_dt, tau) if tau > 0 else self.step_dt
        return min(1e-3 / g, tau / 1000.0)


#: Sentinel for infinite temperature (maximally mixed Gibbs state).
T_INFINITY = math.inf
