"""Reference dynamics for geodesics among the linear maps ``z -> c z``.

The linear maps form a closed family under the geodesic flow, and their
reduced dynamics in the pair ``(c, a)`` (map coefficient and reduced velocity,
``dc/dt = a c``) read

    dc/dt = a c
    da/dt (2c + alpha) = -4 a**2 c - alpha a**2 ,

which conserves ``(2c + alpha) a c``, the time derivative of
``c**2 + alpha c``.  That makes ``q(t) = c(t)**2 + alpha c(t)`` affine in t,
so endpoint problems have a closed form obtained by tracking a continuous
root of the quadratic from ``c0`` to ``c1``.

This module provides the right-hand side, a classical 4th-order fixed-step
integrator, the closed form with branch tracking, and a complex secant shoot
that matches the initial reduced velocity to a target endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import check_alpha
from .errors import BranchFailureError, SingularInertiaError

__all__ = [
    "LinearState",
    "reduced_rhs",
    "integrate_reduced",
    "conserved_quantity",
    "closed_form",
    "match_velocity",
]

_SINGULAR_TOL = 1e-12
_BRANCH_GRID = 1024
_BRANCH_TOL = 1e-6


@dataclass(frozen=True)
class LinearState:
    """Map coefficient and reduced velocity of a linear map ``c z``.

    Along any valid trajectory ``coeff`` stays away from zero (the map must
    remain invertible); ``vel`` is the reduced velocity: ``dc/dt = vel * c``.
    """

    coeff: complex
    vel: complex


def reduced_rhs(state: LinearState, alpha: float) -> LinearState:
    """Time derivative of the reduced state; raises near singular inertia."""
    alpha = check_alpha(alpha)
    c, a = state.coeff, state.vel
    denom = 2.0 * c + alpha
    if abs(denom) < _SINGULAR_TOL:
        raise SingularInertiaError(
            f"inertia factor |2c + alpha| = {abs(denom):.3e} below {_SINGULAR_TOL}"
        )
    return LinearState(a * c, (-4.0 * a * a * c - alpha * a * a) / denom)


def conserved_quantity(state: LinearState, alpha: float) -> complex:
    """``(2c + alpha) a c``, constant along exact trajectories."""
    c, a = state.coeff, state.vel
    return (2.0 * c + alpha) * a * c


def integrate_reduced(state: LinearState, alpha: float, duration: float, steps: int) -> np.ndarray:
    """Fixed-step classical Runge-Kutta trajectory of the reduced dynamics.

    Returns a (steps+1, 2) complex array of (coeff, vel) pairs at the nodes.
    """
    alpha = check_alpha(alpha)
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    h = duration / steps
    out = np.empty((steps + 1, 2), dtype=complex)
    out[0] = (state.coeff, state.vel)
    y = state
    for k in range(steps):
        k1 = reduced_rhs(y, alpha)
        k2 = reduced_rhs(_advance(y, k1, h / 2), alpha)
        k3 = reduced_rhs(_advance(y, k2, h / 2), alpha)
        k4 = reduced_rhs(_advance(y, k3, h), alpha)
        y = LinearState(
            y.coeff + (h / 6) * (k1.coeff + 2 * k2.coeff + 2 * k3.coeff + k4.coeff),
            y.vel + (h / 6) * (k1.vel + 2 * k2.vel + 2 * k3.vel + k4.vel),
        )
        out[k + 1] = (y.coeff, y.vel)
    return out


def _advance(y: LinearState, dydt: LinearState, h: float) -> LinearState:
    return LinearState(y.coeff + h * dydt.coeff, y.vel + h * dydt.vel)


def closed_form(c0: complex, c1: complex, alpha: float, ts) -> np.ndarray:
    """Coefficient path ``c(t)`` with ``c**2 + alpha c`` affine from c0 to c1.

    The root ``c = (-alpha + sqrt(alpha**2 + 4q))/2`` is continued from
    ``c0`` along a fine grid, always picking the root closer to the previous
    value.  Raises BranchFailureError when no continuous branch reaches
    ``c1`` (the affine path of q crosses the critical value -alpha**2/4).
    """
    alpha = check_alpha(alpha)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts < 0) or np.any(ts > 1):
        raise ValueError("query times must lie in [0, 1]")
    grid = np.unique(np.concatenate([np.linspace(0.0, 1.0, _BRANCH_GRID), ts]))
    q0 = c0 * c0 + alpha * c0
    q1 = c1 * c1 + alpha * c1
    q = (1.0 - grid) * q0 + grid * q1

    values = np.empty(len(grid), dtype=complex)
    prev = complex(c0)
    for i, qi in enumerate(q):
        root = np.sqrt(complex(alpha * alpha + 4.0 * qi))
        plus = (-alpha + root) / 2.0
        minus = (-alpha - root) / 2.0
        prev = plus if abs(plus - prev) <= abs(minus - prev) else minus
        values[i] = prev
    if abs(values[-1] - c1) > _BRANCH_TOL:
        raise BranchFailureError(
            f"continuous branch from {c0} ends at {values[-1]}, not {c1}"
        )
    idx = np.searchsorted(grid, ts)
    return values[idx]


def match_velocity(c0: complex, c1: complex, alpha: float, steps: int = 1000) -> complex:
    """Initial reduced velocity whose trajectory reaches ``c1`` at time 1.

    Starts from the value implied by conservation (q affine gives
    ``a0 = (q1-q0) / ((2 c0 + alpha) c0)``) and polishes with a complex
    secant iteration against the fixed-step integrator, to 1e-10.
    """
    alpha = check_alpha(alpha)
    q0 = c0 * c0 + alpha * c0
    q1 = c1 * c1 + alpha * c1
    a = (q1 - q0) / ((2.0 * c0 + alpha) * c0)

    def endpoint_miss(a0: complex) -> complex:
        traj = integrate_reduced(LinearState(c0, a0), alpha, 1.0, steps)
        return traj[-1, 0] - c1

    f_a = endpoint_miss(a)
    if abs(f_a) <= 1e-10:
        return a
    b = a * (1.0 + 1e-6) + 1e-8
    f_b = endpoint_miss(b)
    for _ in range(60):
        if f_b == f_a:
            break
        a, b, f_a = b, b - f_b * (b - a) / (f_b - f_a), f_b
        f_b = endpoint_miss(b)
        if abs(f_b) <= 1e-10:
            return b
    raise BranchFailureError(
        f"velocity matching stalled: endpoint miss {abs(f_b):.3e} after secant iteration"
    )
