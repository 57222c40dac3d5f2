"""Prime-field linear algebra, dispatching to the compiled kernel when built.

Set GENTLECAT_PURE=1 in the environment to force the numpy fallback.
"""

import os

if os.environ.get("GENTLECAT_PURE"):
    from . import _gfpure as _impl
else:
    try:
        from . import _gfcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _gfpure as _impl

rref = _impl.rref
rank = _impl.rank
nullspace = _impl.nullspace

#: name of the active backend, "gfcore" (compiled) or "gfpure" (numpy)
BACKEND = _impl.__name__.rsplit(".", 1)[-1].lstrip("_")
