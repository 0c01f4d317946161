"""Backend selection for the hot kernels.

The compiled extension ``linespace._ckernels`` is used when it imports;
otherwise (or when ``LINESPACE_PURE_PYTHON=1``) the numpy/pure-Python twins
in ``linespace._kernels_py`` are used.  Both expose the same functions.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("LINESPACE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        pass

geodesic_accel = _impl.geodesic_accel
rk4_geodesic = _impl.rk4_geodesic
poly_taylor = _impl.poly_taylor


def available_backends():
    """Mapping ``name -> module`` of every backend importable in this process."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:  # pragma: no cover
        pass
    return out
