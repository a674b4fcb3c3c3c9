"""Piecewise structure of the penalized optimum as the weight ``lam`` varies.

Alternately minimizing the data fit and the transform sparsity produces a
finite ladder of (fit value, count) levels: level 0 is the unconstrained fit
optimum with its sparsest minimizers, and each later level is the best fit
achievable with strictly fewer nonzeros.  The optimal value at any weight is
then the lower envelope of the lines ``fit_value + lam * count`` over the
ladder, a concave nondecreasing piecewise-linear function of ``lam``, and the
optimal solution set is piecewise constant with jumps exactly at the envelope
breakpoints.
"""

from dataclasses import dataclass
from itertools import chain

from . import oracle
from .problem import DEFAULT_TOL_ZERO, count_nonzeros
from ._validation import positive_scalar
from .errors import InputError

# Breakpoint ties are collected relative to the largest ratio.
_BREAK_TIE_RTOL = 1e-10
# A query weight this close to a breakpoint takes the tie branch.
_BREAK_EQ_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class SparsityLevels:
    """Ladder of (fit value, count) levels with representative minimizers.

    ``fit_values`` is strictly increasing, ``counts`` strictly decreasing,
    and ``minimizers[i]`` holds one representative per optimal pattern at
    level ``i``.
    """

    fit_values: tuple
    counts: tuple
    minimizers: tuple

    def __post_init__(self):
        object.__setattr__(self, "fit_values", tuple(float(v) for v in self.fit_values))
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        object.__setattr__(self, "minimizers", tuple(tuple(ms) for ms in self.minimizers))
        k = len(self.fit_values)
        if k == 0 or len(self.counts) != k or len(self.minimizers) != k:
            raise InputError("levels must be nonempty and aligned")
        if any(b <= a for a, b in zip(self.fit_values, self.fit_values[1:])):
            raise InputError("fit_values must be strictly increasing")
        if any(b >= a for a, b in zip(self.counts, self.counts[1:])):
            raise InputError("counts must be strictly decreasing")
        if self.counts[-1] < 0:
            raise InputError("counts must be nonnegative")
        if any(len(ms) == 0 for ms in self.minimizers):
            raise InputError("every level needs at least one minimizer")

    @property
    def num_levels(self):
        return len(self.fit_values)


@dataclass(frozen=True, eq=False)
class PathBreakpoints:
    """Envelope breakpoints of the optimal value as a function of the weight.

    ``active_levels[i]`` is the level whose line is optimal just above
    ``lambdas[i]``; the lists end with level 0 at weight 0.  ``tie_sets[i]``
    holds the levels whose lines meet the active one at ``lambdas[i-1]``
    (``tie_sets[0]`` seeds the iteration with the deepest level).
    """

    active_levels: tuple
    lambdas: tuple
    tie_sets: tuple

    def __post_init__(self):
        object.__setattr__(self, "active_levels", tuple(int(t) for t in self.active_levels))
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))
        object.__setattr__(self, "tie_sets", tuple(frozenset(s) for s in self.tie_sets))
        k = len(self.lambdas)
        if k == 0 or len(self.active_levels) != k or len(self.tie_sets) != k:
            raise InputError("breakpoint lists must be nonempty and aligned")
        if self.active_levels[-1] != 0 or self.lambdas[-1] != 0.0:
            raise InputError("breakpoints must terminate at level 0 and weight 0")
        if any(b >= a for a, b in zip(self.active_levels, self.active_levels[1:])):
            raise InputError("active_levels must be strictly decreasing")
        if any(b >= a for a, b in zip(self.lambdas, self.lambdas[1:])):
            raise InputError("lambdas must be strictly decreasing")
        if any(len(s) == 0 for s in self.tie_sets):
            raise InputError("tie sets must be nonempty")
        seen = set()
        for s in self.tie_sets:
            if seen & s:
                raise InputError("tie sets must be pairwise disjoint")
            seen |= s

    @property
    def num_breakpoints(self):
        return len(self.lambdas) - 1


def build_levels(inst, tol_zero=DEFAULT_TOL_ZERO):
    """Construct the (fit value, count) ladder for a problem instance.

    Level 0 minimizes the fit alone and records the sparsest minimizers; each
    following level re-minimizes the fit subject to a strictly smaller count
    bound, until the count hits zero or the bound becomes infeasible.
    """
    sub = oracle.min_constrained(inst, inst.m, tol_zero)
    fit_values, counts, reps = [], [], []
    while True:
        level_counts = [count_nonzeros(inst.B @ mz.x, tol_zero) for mz in sub.minimizers]
        s = min(level_counts)
        fit_values.append(sub.value)
        counts.append(s)
        reps.append(tuple(mz for mz, c in zip(sub.minimizers, level_counts) if c == s))
        if s == 0:
            break
        nxt = oracle.min_constrained(inst, s - 1, tol_zero)
        if not nxt.feasible:
            break
        sub = nxt
    return SparsityLevels(fit_values=fit_values, counts=counts, minimizers=reps)


def build_breakpoints(levels):
    """Locate the envelope breakpoints of ``min_i fit_values[i] + lam*counts[i]``.

    Walks the envelope from the deepest level down to level 0: the next
    breakpoint is the largest pairwise crossing weight against all shallower
    levels, and the crossing levels (ties included) seed the next step.
    """
    rho, s = levels.fit_values, levels.counts
    top = levels.num_levels - 1
    ties = [frozenset({top})]
    actives, lams = [], []
    current = ties[0]
    while 0 not in current:
        t_i = min(current)
        ratios = [(rho[t_i] - rho[j]) / (s[j] - s[t_i]) for j in range(t_i)]
        lam_i = max(ratios)
        tol = _BREAK_TIE_RTOL * (1.0 + abs(lam_i))
        current = frozenset(j for j, r in enumerate(ratios) if r >= lam_i - tol)
        actives.append(t_i)
        lams.append(lam_i)
        ties.append(current)
    actives.append(0)
    lams.append(0.0)
    return PathBreakpoints(active_levels=actives, lambdas=lams, tie_sets=ties)


def optimal_value(levels, lam):
    """Optimal penalized value at weight ``lam``: the lower line envelope."""
    lam = positive_scalar(lam, "lam")
    return min(rho + lam * s for rho, s in zip(levels.fit_values, levels.counts))


def optimal_set(levels, breakpoints, lam):
    """Representatives of the optimal solution set at weight ``lam``.

    Inside an open interval between breakpoints the active level alone is
    optimal; exactly at a breakpoint the meeting levels are all optimal and
    their representative lists are concatenated.
    """
    lam = positive_scalar(lam, "lam")
    k = breakpoints.num_breakpoints
    if k == 0:
        return levels.minimizers[0]
    positive = breakpoints.lambdas[:-1]
    for i, lam_i in enumerate(positive):
        if abs(lam - lam_i) <= _BREAK_EQ_RTOL * max(1.0, lam_i):
            idx = sorted(breakpoints.tie_sets[i + 1] | {breakpoints.active_levels[i]})
            return tuple(chain.from_iterable(levels.minimizers[j] for j in idx))
    if lam > positive[0]:
        return levels.minimizers[breakpoints.active_levels[0]]
    for i in range(1, k + 1):
        if lam > breakpoints.lambdas[i]:
            return levels.minimizers[breakpoints.active_levels[i]]
    raise AssertionError("unreachable: positive lam precedes the final breakpoint 0")
