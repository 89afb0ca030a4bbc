"""Kernel backend selection: compiled extension if present, Python otherwise."""

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

kernels = _compiled if _compiled is not None else _pykernels


def backend_name():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return "compiled" if kernels is _compiled and _compiled is not None else "python"


def get_kernels(compiled=None):
    """Return a kernel module.

    compiled=None picks the default (best available); True requires the
    extension; False forces the Python fallback (used by benchmarks).
    """
    if compiled is None:
        return kernels
    if compiled:
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    return _pykernels
