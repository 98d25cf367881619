"""Pure numpy/scipy fallback for the integrator kernels.

Implements exactly the same fixed-step fourth-order Runge-Kutta updates as
the compiled extension, with the sparse-plus-diagonal Hamiltonian split.
Slower (no loop fusion), but dependency-free beyond scipy and adequate for
small problems and for cross-checking the compiled kernels.
"""

import numpy as np
import scipy.sparse as sp

NAME = "reference"


def rk4_chain(indptr, indices, data, zdiag, h0, slope, dt, nsteps, u_view):
    """Advance the chain propagator in place.

    ``u_view`` is the (dim, 2*dim) float64 view of the complex propagator,
    matching the compiled kernel's calling convention.
    """
    dim = u_view.shape[0]
    u = u_view.view(np.complex128)
    a = sp.csr_matrix((data, indices, indptr), shape=(dim, dim))
    z = zdiag[:, None]

    def apply(h, x):
        return -1j * (a @ x - (h * z) * x)

    for s in range(nsteps):
        t = s * dt
        k1 = apply(h0 + slope * t, u)
        k2 = apply(h0 + slope * (t + 0.5 * dt), u + (0.5 * dt) * k1)
        k3 = apply(h0 + slope * (t + 0.5 * dt), u + (0.5 * dt) * k2)
        k4 = apply(h0 + slope * (t + dt), u + dt * k3)
        u += (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def rk4_modes(eps0, eps_slope, delta, dt, nsteps, u_view):
    """Advance the batch of 2x2 mode propagators in place (vectorized)."""
    nmodes = eps0.shape[0]
    u = u_view.view(np.complex128).reshape(nmodes, 2, 2)
    d = delta

    def apply(eps, x):
        out = np.empty_like(x)
        out[:, 0, 0] = -1j * (eps * x[:, 0, 0] + d * x[:, 1, 0])
        out[:, 0, 1] = -1j * (eps * x[:, 0, 1] + d * x[:, 1, 1])
        out[:, 1, 0] = -1j * (d * x[:, 0, 0] - eps * x[:, 1, 0])
        out[:, 1, 1] = -1j * (d * x[:, 0, 1] - eps * x[:, 1, 1])
        return out

    for s in range(nsteps):
        t = s * dt
        e1 = eps0 + eps_slope * t
        e2 = eps0 + eps_slope * (t + 0.5 * dt)
        e3 = eps0 + eps_slope * (t + dt)
        k1 = apply(e1, u)
        k2 = apply(e2, u + (0.5 * dt) * k1)
        k3 = apply(e2, u + (0.5 * dt) * k2)
        k4 = apply(e3, u + dt * k3)
        u += (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
