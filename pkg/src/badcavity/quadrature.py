"""Periodic trapezoid rule for averages over the angle hypercube [0, 2pi)^d."""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError

# grid points evaluated per slab; bounds peak memory for large node counts
_SLAB_POINTS = 1 << 20


def periodic_nodes(nodes: int, offset: float = 0.5) -> np.ndarray:
    """Equispaced nodes (k + offset) * 2pi / nodes, k = 0..nodes-1."""
    if int(nodes) != nodes or nodes < 1:
        raise ParameterError(f"node count must be a positive integer, got {nodes!r}")
    return (np.arange(nodes) + offset) * (2 * math.pi / nodes)


def periodic_mean(func, dim: int, nodes: int, offset: float = 0.5):
    """Average of ``func`` over [0, 2pi)^dim with the composite trapezoid rule.

    For a periodic integrand every node carries the same weight, so the rule
    reduces to a plain mean over an equispaced grid and converges
    geometrically for smooth integrands.  The default half-step offset keeps
    nodes off the axis-aligned angles (pi/2, pi/4, ...) where the gate
    integrands can hit 0/0 at r = 0.

    ``func(*angles)`` receives ``dim`` broadcastable arrays and returns an
    array or a tuple of arrays.  Returns a float or a tuple of floats.
    Summation is pairwise within a slab and exact (``fsum``) across slabs, so
    the result is bit-stable for fixed ``nodes``.
    """
    if dim < 1:
        raise ParameterError(f"dim must be >= 1, got {dim}")
    t = periodic_nodes(nodes, offset)
    rest = nodes ** (dim - 1)
    step = max(1, _SLAB_POINTS // rest)
    tail = [t.reshape((1,) * (i + 1) + (-1,) + (1,) * (dim - i - 2))
            for i in range(dim - 1)]

    sums = None
    single = False
    for start in range(0, nodes, step):
        head = t[start:start + step].reshape((-1,) + (1,) * (dim - 1))
        shape = (head.shape[0],) + (nodes,) * (dim - 1)
        vals = func(head, *tail)
        if not isinstance(vals, tuple):
            vals, single = (vals,), True
        part = [float(np.sum(np.broadcast_to(v, shape))) for v in vals]
        if sums is None:
            sums = [[] for _ in part]
        for acc, p in zip(sums, part):
            acc.append(p)

    total = nodes ** dim
    means = tuple(math.fsum(acc) / total for acc in sums)
    return means[0] if single else means
