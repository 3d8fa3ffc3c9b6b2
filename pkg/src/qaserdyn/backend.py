"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure-Python kernels when
the extension is not built. Both expose the same functions with the same
semantics; ``backend_name()`` reports which one is active.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl
except ImportError:  # extension not built; pure fallback
    from . import _kernels_py as _impl

rk4_phi = _impl.rk4_phi
rk4_envelope = _impl.rk4_envelope


def backend_name() -> str:
    """'compiled' or 'python', depending on what import found."""
    return _impl.BACKEND
