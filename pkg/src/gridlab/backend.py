"""Backend selection for the hot loss/gradient kernels.

Two implementations exist with identical call signatures:

* ``gridlab.kernels.numba_backend`` -- scalar loops under ``@njit`` (fast)
* ``gridlab.kernels.numpy_backend`` -- vectorised pure numpy (fallback)

The active one is chosen once, from the ``GRIDLAB_BACKEND`` environment
variable: ``numba``, ``numpy``, or ``auto`` (default; numba when importable).
``set_backend`` overrides the choice at runtime, mainly for tests and the
benchmark script.
"""

import logging
import os

log = logging.getLogger(__name__)

_VALID = ("auto", "numba", "numpy")
_active = None
_kernels = None


def _load(name):
    if name == "numba":
        from gridlab.kernels import numba_backend
        return numba_backend
    from gridlab.kernels import numpy_backend
    return numpy_backend


def _resolve(requested):
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        return "numba"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        log.info("numba not importable; using pure-numpy kernels")
        return "numpy"


def active_backend() -> str:
    """Name of the kernel backend in use ('numba' or 'numpy')."""
    global _active, _kernels
    if _active is None:
        requested = os.environ.get("GRIDLAB_BACKEND", "auto").lower()
        if requested not in _VALID:
            raise ValueError(
                f"GRIDLAB_BACKEND must be one of {_VALID}, got {requested!r}"
            )
        _active = _resolve(requested)
        _kernels = _load(_active)
    return _active


def set_backend(name: str) -> None:
    """Force a backend ('numba' or 'numpy'), replacing the current one."""
    global _active, _kernels
    if name not in ("numba", "numpy"):
        raise ValueError(f"backend must be 'numba' or 'numpy', got {name!r}")
    _active = name
    _kernels = _load(name)


def kernels():
    """The active kernel module."""
    if _kernels is None:
        active_backend()
    return _kernels
