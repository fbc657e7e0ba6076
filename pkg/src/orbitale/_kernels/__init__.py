"""Backend selector: compiled kernels when available, numpy otherwise.

Set ORBITALE_KERNELS=py to force the numpy fallback, ORBITALE_KERNELS=c
to require the compiled extension (import error becomes fatal).
"""

import os

_choice = os.environ.get("ORBITALE_KERNELS", "").lower()

if _choice == "py":
    from . import _pykernels as _impl

    BACKEND = "py"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise RuntimeError(
                "ORBITALE_KERNELS=c but the compiled extension is missing; "
                "rebuild with Cython and a C compiler"
            ) from None
        from . import _pykernels as _impl

        BACKEND = "py"

coset_min_rep = _impl.coset_min_rep
wl_refine = _impl.wl_refine
orbit_sv = _impl.orbit_sv
orbit_partition = _impl.orbit_partition
perm_order = _impl.perm_order
