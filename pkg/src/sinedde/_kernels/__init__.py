"""Kernel backend selection.

The compiled Cython extension is preferred; the pure-Python mirror is used
when the extension is missing or when the SINEDDE_PURE_PYTHON environment
variable is set to a non-empty value.  Both expose the same functions with
the same semantics.
"""

import os

if os.environ.get("SINEDDE_PURE_PYTHON"):
    from . import _pure as impl
else:
    try:
        from . import _core as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as impl

BACKEND = impl.BACKEND
HIST_CONSTANT = impl.HIST_CONSTANT
HIST_SAMPLED = impl.HIST_SAMPLED
integrate_scalar = impl.integrate_scalar
integrate_pair = impl.integrate_pair
frac_integrate = impl.frac_integrate
wolf_nearest = impl.wolf_nearest
wolf_replacement = impl.wolf_replacement
