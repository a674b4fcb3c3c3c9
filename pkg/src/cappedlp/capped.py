"""Scalar and vector capped power penalties.

The scalar penalty ``min(gamma * |t|**p, 1)`` vanishes at zero, grows like
``gamma * |t|**p`` near the origin and saturates at one, so its sum over a
vector is a bounded surrogate for the number of nonzero entries.  As ``gamma``
grows the surrogate converges pointwise to the exact count.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import positive_scalar


@dataclass(frozen=True)
class CappedParams:
    """Exponent ``p > 0`` and scale ``gamma > 0`` of the capped penalty."""

    p: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "p", positive_scalar(self.p, "p"))
        object.__setattr__(self, "gamma", positive_scalar(self.gamma, "gamma"))


def capped_scalar(t, params):
    """Evaluate ``min(gamma * |t|**p, 1)`` elementwise.

    Accepts scalars or arrays; values lie in ``[0, 1]``.
    """
    a = np.abs(np.asarray(t, dtype=float)) ** params.p
    out = np.minimum(params.gamma * a, 1.0)
    return float(out) if out.ndim == 0 else out


def capped_sum(y, params):
    """Sum of the scalar capped penalty over the entries of ``y``.

    Lies in ``[0, len(y)]`` and never exceeds the nonzero count of ``y``.
    """
    return float(np.sum(capped_scalar(np.asarray(y, dtype=float), params)))


def split_argmin_scalar(t, params):
    """Minimize ``[v != 0] + gamma * |t - v|**p`` over real ``v``.

    The only candidates are ``v = 0`` (cost ``gamma * |t|**p``) and ``v = t``
    (cost 1).  Ties go to ``v = 0`` so the sparser minimizer is reported.
    Returns ``(v, value)``; the value always equals ``capped_scalar(t)``.
    """
    t = float(t)
    cost_zero = params.gamma * abs(t) ** params.p
    if cost_zero > 1.0:
        return t, 1.0
    return 0.0, cost_zero


def scalar_marginal(t, lam, p):
    """Optimal value of ``min over v of |t - v|**p + lam * [v != 0]``.

    Equals ``min(lam, |t|**p)``: keeping ``v = t`` costs ``lam``, zeroing it
    costs ``|t|**p``.  Scaling by ``gamma`` at ``lam = 1/gamma`` recovers the
    capped penalty: ``gamma * scalar_marginal(t, 1/gamma, p) ==
    capped_scalar(t)``.
    """
    lam = positive_scalar(lam, "lam")
    p = positive_scalar(p, "p")
    out = np.minimum(lam, np.abs(np.asarray(t, dtype=float)) ** p)
    return float(out) if out.ndim == 0 else out
