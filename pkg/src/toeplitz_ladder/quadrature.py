"""Quadrature rules on the unit circle.

Two rules share one interface. ``periodic`` is the uniform trapezoid
rule, spectrally accurate for smooth weights. ``endpoint`` is a
double-exponential substitution on (0, 2*pi) for weights with an algebraic
or jump singularity at theta = 0. For that rule the distance of every node
to the singular point is kept separately to avoid cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import AccuracyError

TWO_PI = 2.0 * np.pi

__all__ = ["Rule", "endpoint_rule", "integrate", "make_rule", "periodic_rule"]


@dataclass(frozen=True, eq=False)
class Rule:
    """Nodes and ``d theta`` weights on (0, 2*pi).

    Attributes
    ----------
    theta : ndarray
        Angles of the nodes.
    weights : ndarray
        Quadrature weights for ``d theta`` (they sum to 2*pi).
    edge : ndarray
        Distance from each node to the nearest of 0 and 2*pi.
    xi : ndarray
        ``exp(i theta)``.
    xi_minus_one : ndarray
        ``xi - 1`` evaluated without cancellation near theta = 0.
    """

    kind: str
    points: int
    theta: np.ndarray
    weights: np.ndarray
    edge: np.ndarray
    xi: np.ndarray
    xi_minus_one: np.ndarray


def _finish(kind, points, theta, weights, edge) -> Rule:
    xi = np.exp(1j * theta)
    xi_minus_one = 2j * np.sin(0.5 * edge) * np.exp(0.5j * theta)
    for arr in (theta, weights, edge, xi, xi_minus_one):
        arr.setflags(write=False)
    return Rule(kind, points, theta, weights, edge, xi, xi_minus_one)


@lru_cache(maxsize=64)
def periodic_rule(points: int) -> Rule:
    """Uniform trapezoid rule with ``points`` nodes."""
    if points < 1:
        raise ValueError("points must be positive")
    theta = TWO_PI * np.arange(points) / points
    weights = np.full(points, TWO_PI / points)
    edge = np.minimum(theta, TWO_PI - theta)
    return _finish("periodic", points, theta, weights, edge)


@lru_cache(maxsize=64)
def endpoint_rule(points: int, span: float = 6.0) -> Rule:
    """Double-exponential rule on (0, 2*pi), nested under doubling of ``points``.

    ``theta = pi (1 + tanh(pi/2 sinh u))`` with a trapezoid in ``u`` over
    ``[-span, span]``. The default span keeps the smallest edge distance near
    1e-270, adequate for integrands as singular as ``theta^(-0.9)``.
    """
    if points < 2:
        raise ValueError("points must be at least 2")
    h = 2.0 * span / points
    u = -span + h * np.arange(1, points)
    x = 0.5 * np.pi * np.sinh(u)
    e = np.exp(-2.0 * np.abs(x))
    edge = TWO_PI * e / (1.0 + e)
    theta = np.where(x < 0, edge, TWO_PI - edge)
    sech2 = 4.0 * e / (1.0 + e) ** 2
    weights = h * np.pi * 0.5 * np.pi * np.cosh(u) * sech2
    return _finish("endpoint", points, theta, weights, edge)


def make_rule(kind: str, points: int) -> Rule:
    if kind == "periodic":
        return periodic_rule(points)
    if kind == "endpoint":
        return endpoint_rule(points)
    raise ValueError(f"unknown rule kind {kind!r}")


def integrate(
    func: Callable[[Rule], np.ndarray],
    kind: str = "periodic",
    start: int = 64,
    max_points: int = 1 << 16,
    rtol: float = 1e-13,
    atol: float = 0.0,
):
    """Apply ``func`` to successively doubled rules until the result is stable.

    ``func`` maps a :class:`Rule` to a scalar or array of quadrature sums.
    Convergence is declared when the change between two levels is at most
    ``max(atol, rtol * max|value|)``.

    Raises
    ------
    AccuracyError
        If the cap is reached first; ``best_estimate`` holds the last value.
    """
    prev = None
    points = start
    value = None
    err = np.inf
    while points <= max_points:
        value = np.asarray(func(make_rule(kind, points)))
        if prev is not None:
            err = float(np.max(np.abs(value - prev)))
            scale = float(np.max(np.abs(value))) if value.size else 0.0
            if err <= max(atol, rtol * scale):
                return value if value.ndim else value[()]
        prev = value
        points *= 2
    raise AccuracyError(
        f"{kind} quadrature did not converge by {max_points} points (last change {err:.3g})",
        best_estimate=value,
        error_estimate=err,
    )
