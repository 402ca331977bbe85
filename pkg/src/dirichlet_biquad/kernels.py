"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``DIRICHLET_BIQUAD_PURE`` is set to a non-empty value,
the pure-Python module is used. ``BACKEND`` names the active choice.
"""
import os

from . import _kernels_py

if os.environ.get("DIRICHLET_BIQUAD_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

kronecker = _impl.kronecker
gf2_rank = _impl.gf2_rank
redei_rows = _impl.redei_rows
redei_corank = _impl.redei_corank
cf_period = _impl.cf_period
cf_pm2_index = _impl.cf_pm2_index
reduce_definite = _impl.reduce_definite
reduce_indefinite = _impl.reduce_indefinite
rho = _impl.rho
compose = _impl.compose
definite_reduced_forms = _impl.definite_reduced_forms
indefinite_reduced_forms = _impl.indefinite_reduced_forms
indefinite_cycles = _impl.indefinite_cycles


def available_backends():
    """Mapping of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
