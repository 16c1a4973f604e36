"""Adaptive Gauss-Kronrod quadrature with a half-line transform.

A 7/15-point Gauss-Kronrod rule is applied per interval and the interval with
the largest error estimate is bisected until the summed estimate drops below
an absolute tolerance. Semi-infinite integrals are mapped onto [0, 1) via
x = t/(1-t); the integrands used in this package decay exponentially, which
tames the Jacobian blow-up at t -> 1.
"""

import heapq
import math

import numpy as np

from .errors import ConvergenceError

# 15-point Kronrod nodes on [-1, 1] and their weights; the 7 Gauss nodes are
# the odd-indexed entries.
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_W_KRONROD = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_W_GAUSS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_GAUSS_IDX = np.arange(1, 15, 2)


def _gk15(f, a: float, b: float):
    """One Gauss-Kronrod application on [a, b]; returns (integral, error)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = np.asarray(f(mid + half * _GK_NODES), dtype=float)
    k15 = half * float(_W_KRONROD @ y)
    g7 = half * float(_W_GAUSS @ y[_GAUSS_IDX])
    err = (200.0 * abs(k15 - g7)) ** 1.5
    return k15, err


def integrate_adaptive(f, a: float, b: float, abs_tol: float = 1e-10,
                       max_intervals: int = 2000, seed_intervals: int = 8) -> float:
    """Integrate a vectorized callable over [a, b] to absolute tolerance.

    `f` must accept a numpy array of abscissas and return the integrand
    values. Raises ConvergenceError when `max_intervals` subdivisions do not
    bring the summed error estimate below `abs_tol`.
    """
    if not b > a:
        raise ValueError(f"need b > a, got [{a!r}, {b!r}]")
    intervals = []  # heap of (-err, seq, a, b, val)
    seq = 0
    total_err = 0.0
    edges = np.linspace(a, b, seed_intervals + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(f, lo, hi)
        heapq.heappush(intervals, (-err, seq, lo, hi, val))
        seq += 1
        total_err += err

    while total_err > abs_tol:
        if len(intervals) >= max_intervals:
            raise ConvergenceError(
                f"quadrature error {total_err:.3e} > {abs_tol:.3e} "
                f"after {len(intervals)} intervals")
        neg_err, _, lo, hi, _ = heapq.heappop(intervals)
        total_err += neg_err  # neg_err == -err of the popped interval
        mid = 0.5 * (lo + hi)
        for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
            val, err = _gk15(f, sub_lo, sub_hi)
            heapq.heappush(intervals, (-err, seq, sub_lo, sub_hi, val))
            seq += 1
            total_err += err

    # Resum in left-to-right order so the result does not depend on the heap
    # layout history.
    return math.fsum(item[4] for item in sorted(intervals, key=lambda it: it[2]))


def integrate_half_line(f, abs_tol: float = 1e-10,
                        max_intervals: int = 2000) -> float:
    """Integrate f over [0, inf) via the substitution x = t/(1-t)."""

    def transformed(t):
        one_minus = 1.0 - t
        x = t / one_minus
        return f(x) / one_minus ** 2

    return integrate_adaptive(transformed, 0.0, 1.0, abs_tol=abs_tol,
                              max_intervals=max_intervals)
