"""Kernel backend selection: compiled extension if built, numpy otherwise.

Set QDCASCADE_FORCE_PY=1 to force the pure-python backend (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("QDCASCADE_FORCE_PY") == "1":
    from ._purepy import BACKEND, averaged_entangled_density
else:
    try:
        from ._core import BACKEND, averaged_entangled_density
    except ImportError:
        from ._purepy import BACKEND, averaged_entangled_density

__all__ = ["BACKEND", "averaged_entangled_density"]
