"""Backend selection for the hot loops.

The numba kernels are used when numba imports cleanly, unless the
environment variable ``MATSUVDW_DISABLE_NUMBA`` is set to a truthy value
(``1``, ``true``, ``yes``), in which case the vectorized numpy kernels
are used.  The choice is made once, at import time.
"""
import os

from . import numpy_impl

ENV_FLAG = "MATSUVDW_DISABLE_NUMBA"


def _numba_disabled(environ=os.environ):
    return environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


def load_backend(name):
    """Return the kernel module called `name` ('numpy' or 'numba')."""
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        from . import numba_impl
        return numba_impl
    raise ValueError(f"unknown kernel backend {name!r}")


if _numba_disabled():
    _impl = numpy_impl
    BACKEND = "numpy"
else:
    try:
        _impl = load_backend("numba")
        BACKEND = "numba"
    except ImportError:
        _impl = numpy_impl
        BACKEND = "numpy"

lorentzian_partial_sum = _impl.lorentzian_partial_sum
product_partial_sum = _impl.product_partial_sum
alpha_on_grid = _impl.alpha_on_grid
pair_partial_sum = _impl.pair_partial_sum
quad_bracket_sum = _impl.quad_bracket_sum
shift_table = _impl.shift_table

__all__ = [
    "BACKEND", "ENV_FLAG", "load_backend",
    "lorentzian_partial_sum", "product_partial_sum", "alpha_on_grid",
    "pair_partial_sum", "quad_bracket_sum", "shift_table",
]
