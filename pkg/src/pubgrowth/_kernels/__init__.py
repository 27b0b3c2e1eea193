"""Backend selection for the numerical kernels.

The compiled Cython module is used when it imports cleanly; otherwise the
pure NumPy twin takes over.  Set ``PUBGROWTH_PURE_PYTHON=1`` to force the
fallback (useful for the backend-agreement tests and the benchmark).
"""

import os

if os.environ.get("PUBGROWTH_PURE_PYTHON"):
    from . import py as _backend
else:
    try:
        from . import _c as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import py as _backend

BACKEND = _backend.NAME
kalman_run = _backend.kalman_run
css_residuals = _backend.css_residuals
arma_recurse = _backend.arma_recurse


def backends():
    """All importable backends, name -> module (for tests and benchmarks)."""
    from . import py

    found = {py.NAME: py}
    try:
        from . import _c  # type: ignore[attr-defined]

        found[_c.NAME] = _c
    except ImportError:
        pass
    return found
