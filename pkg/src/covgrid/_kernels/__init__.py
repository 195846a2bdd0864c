"""Hot numeric kernels with a compiled core and a NumPy fallback.

`covgrid._kernels._core` is a Cython extension built at install time; if it
is missing (no compiler, source checkout) the pure implementation is used.
Both expose the same functions with identical results; `IMPLEMENTATION`
records which one was picked so benchmarks and tests can tell them apart.
"""

from . import _pure
from ._pure import BOUNDARY, INSIDE, OUTSIDE

try:
    from . import _core
except ImportError:
    _core = None

_impl = _core if _core is not None else _pure

IMPLEMENTATION = "compiled" if _core is not None else "pure"
HAVE_COMPILED = _core is not None

classify_points = _impl.classify_points
covered_mask = _impl.covered_mask
two_opt = _impl.two_opt

__all__ = [
    "BOUNDARY",
    "HAVE_COMPILED",
    "IMPLEMENTATION",
    "INSIDE",
    "OUTSIDE",
    "classify_points",
    "covered_mask",
    "two_opt",
]
