"""Select the geometry kernel backend at import time.

The compiled ``_geomcore`` extension is used when it was built; otherwise,
or when ``FOVLAB_PURE_PYTHON`` is set to a non-empty value other than ``0``,
the numpy fallback in ``_geompy`` is used.
"""

import os

from . import _geompy

BACKEND = "python"
chain_hull = _geompy.chain_hull
convex_dist = _geompy.convex_dist

if os.environ.get("FOVLAB_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _geomcore
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        chain_hull = _geomcore.chain_hull
        convex_dist = _geomcore.convex_dist
