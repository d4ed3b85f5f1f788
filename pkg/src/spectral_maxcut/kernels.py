"""Kernel backend selection.

The compiled ``_core`` extension is used when it imports; otherwise the
numpy/pure-Python ``_pycore`` fallback is used. Setting the environment
variable ``SPECTRAL_MAXCUT_PURE=1`` forces the fallback.
"""
import logging
import os

from . import _pycore

log = logging.getLogger(__name__)

_KERNELS = (
    "weighted_degrees",
    "sweep",
    "greedy",
    "lift",
    "maxcut_enum",
    "ternary_enum",
)

if os.environ.get("SPECTRAL_MAXCUT_PURE", "") not in ("", "0"):
    _impl = _pycore
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        log.debug("compiled kernels unavailable, using pure-Python fallback")
        _impl = _pycore
        BACKEND = "python"


def backend_module(name):
    """Return the kernel module for ``name`` in {"cython", "python"}."""
    if name == "python":
        return _pycore
    if name == "cython":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")


weighted_degrees = _impl.weighted_degrees
sweep = _impl.sweep
greedy = _impl.greedy
lift = _impl.lift
maxcut_enum = _impl.maxcut_enum
ternary_enum = _impl.ternary_enum
