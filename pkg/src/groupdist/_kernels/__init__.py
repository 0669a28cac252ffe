"""Backend selection for the hot search loops.

The compiled extension is used when it imports; set ``GROUPDIST_PURE=1``
to force the pure-Python fallback.
"""

import os

from . import _pycore as pure

BACKEND = "python"
core = pure

if os.environ.get("GROUPDIST_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _compiled
    except ImportError:  # extension not built
        pass
    else:
        core = _compiled
        BACKEND = "cython"

__all__ = ["core", "pure", "BACKEND"]
