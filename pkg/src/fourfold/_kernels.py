"""Select the reduction kernel backend.

Prefers the compiled extension when it was built; set FOURFOLD_PURE=1 to
force the pure Python kernel.  BACKEND names the choice for reporting.
"""

import os

if os.environ.get("FOURFOLD_PURE"):
    from fourfold._snf_py import snf_inplace

    BACKEND = "python"
else:
    try:
        from fourfold._snf_cy import snf_inplace

        BACKEND = "compiled"
    except ImportError:
        from fourfold._snf_py import snf_inplace

        BACKEND = "python"

__all__ = ["snf_inplace", "BACKEND"]
