"""Adaptive quadrature rules used by the phase and Bessel integrals.

Two rules live here:

* :func:`gauss_kronrod` - globally adaptive 7/15-point Gauss-Kronrod with a
  caller-chosen initial panel count, for smooth oscillatory (possibly
  complex) integrands;
* :func:`adaptive_simpson` - interval-halving Simpson used for the line
  integral of the vector potential.

Integrands passed to ``gauss_kronrod`` must accept a 1-D node array.
"""
from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np

from .errors import QuadratureFailure

# Kronrod nodes on [0, 1]; odd indices (1, 3, 5, 7) are the Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full symmetric 15-point abscissae and weights on [-1, 1].
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5]] = _WG[:3]
_GWEIGHTS[[9, 11, 13]] = _WG[2::-1]
_GWEIGHTS[7] = _WG[3]


def _kronrod_panels(f, lo: np.ndarray, hi: np.ndarray):
    """Evaluate the 15-point rule on many panels at once."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    kron = half * (fx @ _KWEIGHTS)
    gauss = half * (fx @ _GWEIGHTS)
    return kron, np.abs(kron - gauss)


def gauss_kronrod(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-13,
    rtol: float = 0.0,
    panels: int = 1,
    max_panels: int = 200_000,
):
    """Integrate ``f`` over ``[a, b]`` to ``max(tol, rtol*|I|)``.

    The interval is first cut into ``panels`` equal pieces; afterwards the
    panel with the largest error estimate is bisected until the summed
    estimate meets the tolerance.

    Returns
    -------
    value, error_estimate

    Raises
    ------
    QuadratureFailure
        More than ``max_panels`` panels would be needed.
    """
    if a == b:
        return 0.0 * f(np.array([a]))[0], 0.0
    edges = np.linspace(a, b, panels + 1)
    vals, errs = _kronrod_panels(f, edges[:-1], edges[1:])
    # max-heap keyed on error estimate
    heap = [(-e, lo, hi, v) for e, lo, hi, v in zip(errs, edges[:-1], edges[1:], vals)]
    heapq.heapify(heap)
    total = np.sum(vals)
    err = float(np.sum(errs))
    while err > max(tol, rtol * abs(total)):
        if len(heap) >= max_panels:
            raise QuadratureFailure(
                f"no convergence on [{a}, {b}] with {max_panels} panels (error {err:.3e})"
            )
        # bisect a batch of the worst panels for speed
        batch = [heapq.heappop(heap) for _ in range(min(len(heap), 32))]
        lo = np.array([p[1] for p in batch])
        hi = np.array([p[2] for p in batch])
        mid = 0.5 * (lo + hi)
        if np.any((mid <= lo) | (mid >= hi)):
            raise QuadratureFailure(f"panel width underflow on [{a}, {b}]")
        v1, e1 = _kronrod_panels(f, lo, mid)
        v2, e2 = _kronrod_panels(f, mid, hi)
        for i in range(len(batch)):
            heapq.heappush(heap, (-e1[i], lo[i], mid[i], v1[i]))
            heapq.heappush(heap, (-e2[i], mid[i], hi[i], v2[i]))
        # re-sum instead of updating incrementally to avoid drift
        total = sum(p[3] for p in heap)
        err = float(sum(-p[0] for p in heap))
    return total, err


def _simpson(fa, fm, fb, h):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    max_intervals: int = 1 << 20,
) -> tuple[float, int]:
    """Interval-halving Simpson rule.

    A piece is accepted once refining it changes the estimate by less than
    its share of ``tol`` (the share halves with every bisection).

    Returns the integral and the number of accepted intervals. Raises
    :class:`OverflowError` when more than ``max_intervals`` would be needed;
    callers translate that to their own error type.
    """
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), tol)]
    total = 0.0
    compensation = 0.0
    accepted = 0
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = f(0.5 * (lo + mid))
        fr = f(0.5 * (mid + hi))
        left = _simpson(flo, fl, fmid, mid - lo)
        right = _simpson(fmid, fr, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps or mid <= lo or mid >= hi:
            # Kahan summation keeps round-off below the target for long paths
            y = left + right + delta / 15.0 - compensation
            t = total + y
            compensation = (t - total) - y
            total = t
            accepted += 1
            continue
        if accepted + len(stack) + 2 > max_intervals:
            raise OverflowError("subdivision limit reached")
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps))
    return total, accepted


def gauss_legendre_panels(a: float, b: float, panels: int, order: int = 20):
    """Nodes and weights of a composite Gauss-Legendre rule."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def oscillation_panels(frequency: float, length: float, per_panel: float = math.pi) -> int:
    """Panel count so that each panel spans at most ``per_panel`` radians of phase."""
    return max(1, int(math.ceil(abs(frequency) * length / per_panel)))
