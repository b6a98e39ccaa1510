"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``PATHSPACE_PURE_PYTHON`` is set to a non-empty value,
the pure-Python twin is used.  Both expose ``slide``, ``normalize`` and
``stage_scan`` with identical results.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("PATHSPACE_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

slide = active.slide
normalize = active.normalize
stage_scan = active.stage_scan


def backends() -> dict:
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["compiled"] = compiled_backend
    return out
