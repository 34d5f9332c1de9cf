"""Hot numerical kernels with a selectable backend.

Two implementations ship: a compiled extension and a pure numpy
fallback.  They are algorithmically identical down to accumulation
order, so switching backends never changes a result bit.  The compiled
one is preferred when its build is present; set ``TSVERIFY_KERNEL`` to
``python`` or ``compiled`` to force a choice, or call
:func:`set_backend` at runtime.
"""

import os

import numpy as np

from . import _py

_BACKENDS = {"python": _py}
try:
    from . import _core

    _BACKENDS["compiled"] = _core
except ImportError:
    _core = None

_active = "compiled" if _core is not None else "python"

_requested = os.environ.get("TSVERIFY_KERNEL", "").strip().lower()
if _requested:
    if _requested not in ("python", "compiled"):
        raise ImportError("TSVERIFY_KERNEL must be 'python' or 'compiled'")
    if _requested == "compiled" and _core is None:
        raise ImportError("TSVERIFY_KERNEL=compiled but the extension is not built")
    _active = _requested


def available_backends():
    return tuple(sorted(_BACKENDS))


def get_backend():
    """Name of the active backend: 'compiled' or 'python'."""
    return _active


def set_backend(name):
    """Switch backend; returns the previously active name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError("unknown backend %r; have %r" % (name, available_backends()))
    prev = _active
    _active = name
    return prev


def _as_input(A):
    return np.ascontiguousarray(A, dtype=np.float64)


def forward_diff3(F):
    """Third-order forward difference; see kernels._py.forward_diff3."""
    return _BACKENDS[_active].forward_diff3(_as_input(F))


def prefix_sum3(W):
    """Zero-padded 3-D prefix sums; see kernels._py.prefix_sum3."""
    return _BACKENDS[_active].prefix_sum3(_as_input(W))


def octant_sums(P, s1, s2, s3):
    """Octant box sums at all admissible points; see kernels._py.octant_sums."""
    return _BACKENDS[_active].octant_sums(_as_input(P), s1, s2, s3)
