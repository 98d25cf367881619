"""Integrator backend selection.

The compiled extension (``spinfric.backends._accel``) is used when it
imported successfully; otherwise the numpy reference implementation takes
over.  Set ``SPINFRIC_BACKEND=reference`` or ``SPINFRIC_BACKEND=accel`` to
force a choice (forcing ``accel`` without the extension built is an error).

Both backends implement the same two entry points with identical call
signatures and semantics:

``rk4_chain(indptr, indices, data, zdiag, h0, slope, dt, nsteps, u_view)``
    In-place RK4 for dU/dt = -i (A - h(t) Z) U with A sparse (CSR arrays),
    Z diagonal and h(t) = h0 + slope*t.  ``u_view`` is ``U.view(float64)``.

``rk4_modes(eps0, eps_slope, delta, dt, nsteps, u_view)``
    In-place RK4 for a batch of independent 2x2 propagators.
"""

import os

from . import reference

try:
    from . import _accel
    _HAVE_ACCEL = True
except ImportError:  # extension not built
    _accel = None
    _HAVE_ACCEL = False


class _Accel:
    NAME = "accel"
    rk4_chain = staticmethod(_accel.rk4_chain) if _HAVE_ACCEL else None
    rk4_modes = staticmethod(_accel.rk4_modes) if _HAVE_ACCEL else None


def get_backend(name: str | None = None):
    """Return the backend module-like object selected by ``name`` or env."""
    if name is None:
        name = os.environ.get("SPINFRIC_BACKEND", "")
    name = name.lower()
    if name in ("", "auto"):
        return _Accel if _HAVE_ACCEL else reference
    if name == "accel":
        if not _HAVE_ACCEL:
            raise RuntimeError(
                "SPINFRIC_BACKEND=accel requested but the compiled extension "
                "is not available; rebuild with Cython + a C compiler")
        return _Accel
    if name == "reference":
        return reference
    raise ValueError(f"unknown backend {name!r} (use 'accel' or 'reference')")


def active_backend() -> str:
    """Name of the backend that get_backend() would return by default."""
    return get_backend().NAME


def have_accel() -> bool:
    return _HAVE_ACCEL
