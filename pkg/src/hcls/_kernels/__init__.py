"""Kernel backend selection.

The compiled Cython core is used when importable; the NumPy fallback
otherwise, or when HCLS_FORCE_NUMPY is set in the environment. Both
expose the same four functions with identical semantics.
"""

import os

from . import _numpy_impl as numpy_impl

try:
    from . import _core as cython_impl
except ImportError:
    cython_impl = None

if cython_impl is not None and not os.environ.get("HCLS_FORCE_NUMPY"):
    _active = cython_impl
    BACKEND = "cython"
else:
    _active = numpy_impl
    BACKEND = "numpy"

hyp_loglik_grads = _active.hyp_loglik_grads
euc_loglik_grads = _active.euc_loglik_grads
hyp_pairwise_distances = _active.hyp_pairwise_distances
euc_pairwise_distances = _active.euc_pairwise_distances


def backend():
    """Name of the active kernel backend ("cython" or "numpy")."""
    return BACKEND
