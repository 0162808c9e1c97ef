"""Selection of the numerical kernel backend at import time.

The compiled extension `darkport._kernels` is preferred when it imported
cleanly; otherwise the NumPy fallback `darkport._kernels_py` is used.  Both
expose the same functions with the same semantics, so everything above this
module is backend-agnostic.

Set the environment variable ``DARKPORT_PURE_PYTHON=1`` before import to
force the fallback even when the extension is available (useful for
benchmarking and for debugging suspected extension issues).
"""

from __future__ import annotations

import os

if os.environ.get("DARKPORT_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def active_backend() -> str:
    """Name of the kernel backend in use: ``"compiled"`` or ``"python"``."""
    return kernels.BACKEND_NAME


rician_cdf_sf = kernels.rician_cdf_sf
batch_ml_moments = kernels.batch_ml_moments
batch_radial_count = kernels.batch_radial_count
