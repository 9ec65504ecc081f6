"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``TAITKNESER_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the numpy implementation is used.
"""

import os

from . import _pykernels

MAX_CROSSINGS = _pykernels.MAX_CROSSINGS


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
_forced = os.environ.get("TAITKNESER_PURE_PYTHON", "") not in ("", "0")

if _compiled is not None and not _forced:
    _active = _compiled
    BACKEND = "cython"
else:
    _active = _pykernels
    BACKEND = "python"

pairwise_interval_matrix = _active.pairwise_interval_matrix
hooke_scan = _active.hooke_scan


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def get_backend(name):
    """Kernel module by name ('python' or 'cython')."""
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("the compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
