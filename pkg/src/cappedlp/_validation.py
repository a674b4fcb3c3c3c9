"""Array coercion and scalar checks used by the public entry points."""

import numpy as np

from .errors import InputError


def as_matrix(value, name):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a numeric matrix: {exc}") from None
    if arr.ndim != 2:
        raise InputError(f"{name} must be a 2-d array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} must contain only finite values")
    return arr


def as_vector(value, name, size=None):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a numeric vector: {exc}") from None
    if arr.ndim != 1:
        raise InputError(f"{name} must be a 1-d array, got ndim={arr.ndim}")
    if size is not None and arr.shape[0] != size:
        raise InputError(f"{name} must have length {size}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} must contain only finite values")
    return arr


def positive_scalar(value, name):
    x = float(value)
    if not np.isfinite(x) or x <= 0:
        raise InputError(f"{name} must be a positive finite number, got {value!r}")
    return x


def nonnegative_scalar(value, name):
    x = float(value)
    if not np.isfinite(x) or x < 0:
        raise InputError(f"{name} must be a nonnegative finite number, got {value!r}")
    return x


def frozen(arr):
    """Owning, read-only copy of a float array."""
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out
