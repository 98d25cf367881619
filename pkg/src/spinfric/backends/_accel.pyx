# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled integrator kernels.

Both kernels advance propagators of the Schrodinger equation
dU/dt = -i H(t) U with classical fixed-step fourth-order Runge-Kutta.
Complex matrices are handled as interleaved (re, im) float64 pairs so the
inner loops compile to plain real fused multiply-adds.

The chain kernel exploits the structure H(t) = A - h(t) Z with A a sparse
real symmetric matrix (CSR) and Z diagonal, which is what the driven spin
chain produces: per Runge-Kutta stage the work is one sparse row gather
plus streaming row updates, fused so each output row is touched once.
"""

import numpy as np


def rk4_chain(const long long[::1] indptr, const long long[::1] indices,
              const double[::1] data, const double[::1] zdiag,
              double h0, double slope, double dt, long long nsteps,
              double[:, ::1] u):
    """Advance u (complex propagator viewed as (dim, 2*dim) float64) in place."""
    cdef long long dim = u.shape[0]
    cdef long long w = 2 * dim
    acc_a = np.empty((dim, w), np.float64)
    xa_a = np.empty((dim, w), np.float64)
    xb_a = np.empty((dim, w), np.float64)
    trow_a = np.empty(w, np.float64)
    cdef double[:, ::1] acc = acc_a, xa = xa_a, xb = xb_a
    cdef double[::1] trow = trow_a
    cdef long long s
    cdef double t, c6, c3
    c6 = dt / 6.0
    c3 = dt / 3.0
    with nogil:
        for s in range(nsteps):
            t = s * dt
            # stage 1: read u, write acc = u + (dt/6) k1, xa = u + (dt/2) k1
            _stage(&indptr[0], &indices[0], &data[0], &zdiag[0],
                   h0 + slope * t, &u[0, 0], &u[0, 0], &acc[0, 0],
                   0.5 * dt, c6, &xa[0, 0], &trow[0], dim, 1)
            # stage 2: read xa, acc += (dt/3) k2, xb = u + (dt/2) k2
            _stage(&indptr[0], &indices[0], &data[0], &zdiag[0],
                   h0 + slope * (t + 0.5 * dt), &xa[0, 0], &u[0, 0], &acc[0, 0],
                   0.5 * dt, c3, &xb[0, 0], &trow[0], dim, 0)
            # stage 3: read xb, acc += (dt/3) k3, xa = u + dt k3
            _stage(&indptr[0], &indices[0], &data[0], &zdiag[0],
                   h0 + slope * (t + 0.5 * dt), &xb[0, 0], &u[0, 0], &acc[0, 0],
                   dt, c3, &xa[0, 0], &trow[0], dim, 0)
            # stage 4: read xa, acc += (dt/6) k4, no successor state
            _stage(&indptr[0], &indices[0], &data[0], &zdiag[0],
                   h0 + slope * (t + dt), &xa[0, 0], &u[0, 0], &acc[0, 0],
                   0.0, c6, NULL, &trow[0], dim, 0)
            _copy(&acc[0, 0], &u[0, 0], dim * w)


cdef void _stage(const long long* indptr, const long long* indices,
                 const double* data, const double* zdiag, double h,
                 const double* src, const double* u, double* acc,
                 double a, double c, double* nxt, double* trow,
                 long long dim, int init_acc) noexcept nogil:
    """One Runge-Kutta stage: trow = -i H(h) src (row-wise), then
    acc[i] (+)= c*trow and nxt[i] = u[i] + a*trow, fused per row."""
    cdef long long i, j, l, w = 2 * dim
    cdef double hz, v, tre
    cdef const double* xrow
    cdef const double* urow
    cdef double* arow
    cdef double* nrow
    for i in range(dim):
        hz = -h * zdiag[i]
        xrow = src + i * w
        for j in range(w):
            trow[j] = hz * xrow[j]
        for l in range(indptr[i], indptr[i + 1]):
            v = data[l]
            xrow = src + indices[l] * w
            for j in range(w):
                trow[j] += v * xrow[j]
        # multiply by -i: (re, im) -> (im, -re)
        for j in range(dim):
            tre = trow[2 * j]
            trow[2 * j] = trow[2 * j + 1]
            trow[2 * j + 1] = -tre
        urow = u + i * w
        arow = acc + i * w
        if init_acc:
            for j in range(w):
                arow[j] = urow[j] + c * trow[j]
        else:
            for j in range(w):
                arow[j] += c * trow[j]
        if nxt != NULL:
            nrow = nxt + i * w
            for j in range(w):
                nrow[j] = urow[j] + a * trow[j]


cdef void _copy(const double* src, double* dst, long long n) noexcept nogil:
    cdef long long j
    for j in range(n):
        dst[j] = src[j]


def rk4_modes(const double[::1] eps0, double eps_slope, const double[::1] delta,
              double dt, long long nsteps, double[:, ::1] u):
    """Advance a batch of 2x2 mode propagators in place.

    Mode m evolves under H_m(t) = [[eps, delta], [delta, -eps]] with
    eps = eps0[m] + eps_slope * t.  u is the (nmodes, 8) float64 view of a
    (nmodes, 2, 2) complex128 array, one flattened row-major matrix per row.
    """
    cdef long long nmodes = u.shape[0]
    cdef long long m, s
    cdef double d, e0, t, dt6 = dt / 6.0
    cdef double e1, e2, e3
    cdef double u0r, u0i, u1r, u1i, u2r, u2i, u3r, u3i
    cdef double k0r, k0i, k1r, k1i, k2r, k2i, k3r, k3i
    cdef double a0r, a0i, a1r, a1i, a2r, a2i, a3r, a3i
    cdef double x0r, x0i, x1r, x1i, x2r, x2i, x3r, x3i
    cdef double* row
    with nogil:
        for m in range(nmodes):
            d = delta[m]
            e0 = eps0[m]
            row = &u[m, 0]
            u0r = row[0]; u0i = row[1]; u1r = row[2]; u1i = row[3]
            u2r = row[4]; u2i = row[5]; u3r = row[6]; u3i = row[7]
            for s in range(nsteps):
                t = s * dt
                e1 = e0 + eps_slope * t
                e2 = e0 + eps_slope * (t + 0.5 * dt)
                e3 = e0 + eps_slope * (t + dt)
                # k1 = -i H(e1) u
                k0r = e1 * u0i + d * u2i; k0i = -(e1 * u0r + d * u2r)
                k1r = e1 * u1i + d * u3i; k1i = -(e1 * u1r + d * u3r)
                k2r = d * u0i - e1 * u2i; k2i = -(d * u0r - e1 * u2r)
                k3r = d * u1i - e1 * u3i; k3i = -(d * u1r - e1 * u3r)
                a0r = u0r + dt6 * k0r; a0i = u0i + dt6 * k0i
                a1r = u1r + dt6 * k1r; a1i = u1i + dt6 * k1i
                a2r = u2r + dt6 * k2r; a2i = u2i + dt6 * k2i
                a3r = u3r + dt6 * k3r; a3i = u3i + dt6 * k3i
                x0r = u0r + 0.5 * dt * k0r; x0i = u0i + 0.5 * dt * k0i
                x1r = u1r + 0.5 * dt * k1r; x1i = u1i + 0.5 * dt * k1i
                x2r = u2r + 0.5 * dt * k2r; x2i = u2i + 0.5 * dt * k2i
                x3r = u3r + 0.5 * dt * k3r; x3i = u3i + 0.5 * dt * k3i
                # k2 = -i H(e2) x
                k0r = e2 * x0i + d * x2i; k0i = -(e2 * x0r + d * x2r)
                k1r = e2 * x1i + d * x3i; k1i = -(e2 * x1r + d * x3r)
                k2r = d * x0i - e2 * x2i; k2i = -(d * x0r - e2 * x2r)
                k3r = d * x1i - e2 * x3i; k3i = -(d * x1r - e2 * x3r)
                a0r += 2.0 * dt6 * k0r; a0i += 2.0 * dt6 * k0i
                a1r += 2.0 * dt6 * k1r; a1i += 2.0 * dt6 * k1i
                a2r += 2.0 * dt6 * k2r; a2i += 2.0 * dt6 * k2i
                a3r += 2.0 * dt6 * k3r; a3i += 2.0 * dt6 * k3i
                x0r = u0r + 0.5 * dt * k0r; x0i = u0i + 0.5 * dt * k0i
                x1r = u1r + 0.5 * dt * k1r; x1i = u1i + 0.5 * dt * k1i
                x2r = u2r + 0.5 * dt * k2r; x2i = u2i + 0.5 * dt * k2i
                x3r = u3r + 0.5 * dt * k3r; x3i = u3i + 0.5 * dt * k3i
                # k3 = -i H(e2) x
                k0r = e2 * x0i + d * x2i; k0i = -(e2 * x0r + d * x2r)
                k1r = e2 * x1i + d * x3i; k1i = -(e2 * x1r + d * x3r)
                k2r = d * x0i - e2 * x2i; k2i = -(d * x0r - e2 * x2r)
                k3r = d * x1i - e2 * x3i; k3i = -(d * x1r - e2 * x3r)
                a0r += 2.0 * dt6 * k0r; a0i += 2.0 * dt6 * k0i
                a1r += 2.0 * dt6 * k1r; a1i += 2.0 * dt6 * k1i
                a2r += 2.0 * dt6 * k2r; a2i += 2.0 * dt6 * k2i
                a3r += 2.0 * dt6 * k3r; a3i += 2.0 * dt6 * k3i
                x0r = u0r + dt * k0r; x0i = u0i + dt * k0i
                x1r = u1r + dt * k1r; x1i = u1i + dt * k1i
                x2r = u2r + dt * k2r; x2i = u2i + dt * k2i
                x3r = u3r + dt * k3r; x3i = u3i + dt * k3i
                # k4 = -i H(e3) x
                k0r = e3 * x0i + d * x2i; k0i = -(e3 * x0r + d * x2r)
                k1r = e3 * x1i + d * x3i; k1i = -(e3 * x1r + d * x3r)
                k2r = d * x0i - e3 * x2i; k2i = -(d * x0r - e3 * x2r)
                k3r = d * x1i - e3 * x3i; k3i = -(d * x1r - e3 * x3r)
                u0r = a0r + dt6 * k0r; u0i = a0i + dt6 * k0i
                u1r = a1r + dt6 * k1r; u1i = a1i + dt6 * k1i
                u2r = a2r + dt6 * k2r; u2i = a2i + dt6 * k2i
                u3r = a3r + dt6 * k3r; u3i = a3i + dt6 * k3i
            row[0] = u0r; row[1] = u0i; row[2] = u1r; row[3] = u1i
            row[4] = u2r; row[5] = u2i; row[6] = u3r; row[7] = u3i
