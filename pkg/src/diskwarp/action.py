"""Kinetic energy of disk warps and its discrete action.

The instantaneous energy of a map ``phi`` moving with velocity ``phidot`` is

    L(phi, phidot) = 1/2 ( <phi' phidot, phi' phidot> + alpha <phidot', phidot'> )

with inner products over the unit disk.  A path is discretized by N+1 maps on
a uniform grid over [0, 1]; each interval contributes a midpoint-rule term

    L_d(u, v) = 1/(2h) <m'(v-u), m'(v-u)> + alpha/(2h) <v'-u', v'-u'>,

where ``m = (u+v)/2`` and ``h`` is the step.  The discrete action is the sum
of these terms, evaluated either with direct coefficient convolutions or with
zero-padded FFTs (same value to round-off).  The gradient of the action with
respect to the interior coefficients is computed analytically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .poly import derivative, inner_l2, monomial_weights, mul_naive

__all__ = [
    "DiscretePath",
    "check_alpha",
    "lagrangian",
    "discrete_lagrangian",
    "discrete_action",
    "action_gradient",
]


def check_alpha(alpha: float) -> float:
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    return float(alpha)


@dataclass(frozen=True)
class DiscretePath:
    """Time-indexed maps ``phi_0, ..., phi_N`` on a uniform grid over [0, 1].

    ``steps`` is an (N+1, n) complex array; row k holds the coefficients of
    the map at time k/N.  All rows share the degree bound n.
    """

    steps: np.ndarray

    def __post_init__(self):
        steps = np.asarray(self.steps, dtype=complex)
        if steps.ndim != 2 or steps.shape[0] < 2:
            raise ValueError(
                f"path needs at least two steps of equal degree bound, got shape {steps.shape}"
            )
        object.__setattr__(self, "steps", steps)

    @property
    def num_intervals(self) -> int:
        return self.steps.shape[0] - 1

    @property
    def degree_bound(self) -> int:
        return self.steps.shape[1]

    @property
    def h(self) -> float:
        return 1.0 / self.num_intervals

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.steps.shape[0])


def lagrangian(phi, phidot, alpha: float) -> float:
    """Kinetic energy of ``phi`` moving with velocity ``phidot``; real, >= 0."""
    alpha = check_alpha(alpha)
    prod = mul_naive(derivative(phi), phidot)
    dphidot = derivative(phidot)
    return 0.5 * (inner_l2(prod, prod).real + alpha * inner_l2(dphidot, dphidot).real)


def discrete_lagrangian(phi_k, phi_k1, h: float, alpha: float) -> float:
    """Midpoint-rule energy of one interval; symmetric in its two endpoints."""
    if h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    alpha = check_alpha(alpha)
    u = np.asarray(phi_k, dtype=complex)
    v = np.asarray(phi_k1, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"endpoints must share a degree bound, got {u.shape} and {v.shape}")
    mid_deriv = derivative((u + v) / 2.0)
    delta = v - u
    prod = mul_naive(mid_deriv, delta)
    ddelta = derivative(delta)
    return (
        inner_l2(prod, prod).real + alpha * inner_l2(ddelta, ddelta).real
    ) / (2.0 * h)


@lru_cache(maxsize=256)
def _shifted_weights(m: int) -> np.ndarray:
    """Disk monomial norms indexed one slot up: ``w[i] = pi/i``, ``w[0] = 0``.

    Matches arrays whose entry i carries the coefficient of ``z**(i-1)``
    (entry 0 is structurally zero), the layout used inside the action
    evaluation to keep derivative arrays contiguous.
    """
    w = np.zeros(m)
    w[1:] = np.pi / np.arange(1, m)
    w.flags.writeable = False
    return w


def discrete_action(path: DiscretePath, alpha: float, mode: str = "naive") -> float:
    """Sum of the per-interval discrete energies.

    ``mode="naive"`` multiplies each interval's midpoint derivative and
    increment by direct convolution; ``mode="fft"`` pads both factors, takes
    their forward transforms, multiplies component-wise, and transforms
    back, interval by interval.  The two modes share the same O(N n) staging
    (derivatives, midpoints, increments, derivative-difference term) and
    agree to round-off; they differ only in the product kernel, which is
    O(N n**2) versus O(N n log n).
    """
    alpha = check_alpha(alpha)
    if mode not in ("naive", "fft"):
        raise ValueError(f"mode must be 'naive' or 'fft', got {mode!r}")
    steps = path.steps
    n = path.degree_bound
    h = path.h
    # Shifted layout: entry i holds i * c_i, the coefficient of z**(i-1) of
    # the derivative; entry 0 is zero.  Keeps every array write contiguous.
    derivs = steps * np.arange(n)
    diffs = derivs[1:] - derivs[:-1]
    a1 = (alpha / (2.0 * h)) * float(np.sum(np.abs(diffs) ** 2 * _shifted_weights(n)))

    mid_derivs = (derivs[:-1] + derivs[1:]) / 2.0
    increments = (steps[1:] - steps[:-1]) / h
    full = 2 * n - 1  # products inherit the one-slot shift
    w_full = _shifted_weights(full)
    size = 1 << (full - 1).bit_length()

    a2 = 0.0
    for k in range(path.num_intervals):
        if mode == "naive":
            prod = np.convolve(mid_derivs[k], increments[k])
        else:
            spectrum = np.fft.fft(mid_derivs[k], size)
            spectrum *= np.fft.fft(increments[k], size)
            prod = np.fft.ifft(spectrum)[:full]
        a2 += float(np.abs(prod) ** 2 @ w_full)
    return a1 + (h / 2.0) * a2


def _inner_shifted(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``out[s] = <a, z**s b>`` for ``s = 0 .. len(a)-1``.

    numpy.correlate conjugates its second argument, which matches the
    conjugate-linear slot of the inner product.
    """
    wa = monomial_weights(len(a)) * a
    return np.correlate(wa, b, mode="full")[len(b) - 1 :]


def action_gradient(path: DiscretePath, alpha: float) -> np.ndarray:
    """Gradient of :func:`discrete_action` in the interior coefficients.

    Returns an (N-1, n) complex array ``G`` for the interior steps
    ``k = 1 .. N-1``, packed so that ``G.real`` is the derivative with respect
    to the real part of each coefficient and ``G.imag`` the derivative with
    respect to the imaginary part.
    """
    alpha = check_alpha(alpha)
    N = path.num_intervals
    if N < 2:
        raise ValueError("gradient needs at least one interior step (N >= 2)")
    steps = path.steps
    n = path.degree_bound
    h = path.h
    grads = np.zeros((N + 1, n), dtype=complex)
    idx = np.arange(n)

    for k in range(N):
        u = steps[k]
        v = steps[k + 1]
        mid_deriv = derivative((u + v) / 2.0)
        delta = v - u
        prod = mul_naive(mid_deriv, delta)
        s_delta = _inner_shifted(prod, delta)
        s_mid = _inner_shifted(prod, mid_deriv)

        # d/du_j of m'(v-u) is (z**j)'/2 (v-u) - m' z**j; for v_j the sign of
        # the second term flips.  Index j-1 of s_delta carries <prod, z**(j-1) delta>.
        term_deriv = np.zeros(n, dtype=complex)
        term_deriv[1:] = 0.5 * idx[1:] * s_delta[: n - 1]
        term_mul = s_mid[:n]
        grads[k] += (term_deriv - term_mul) / h
        grads[k + 1] += (term_deriv + term_mul) / h

        if alpha > 0:
            # <D, (z**j)'> = j * pi/j * D[j-1] = pi D[j-1] for the diagonal product.
            ddelta = derivative(delta)
            term_alpha = np.zeros(n, dtype=complex)
            term_alpha[1:] = (alpha * np.pi / h) * ddelta[: n - 1]
            grads[k] -= term_alpha
            grads[k + 1] += term_alpha

    return grads[1:N]
