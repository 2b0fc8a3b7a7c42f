"""Truncated Taylor polynomials on the unit disk.

A candidate conformal map is stored as a dense complex coefficient array
``c`` of length ``n`` representing ``phi(z) = sum_i c[i] z**i``.  The length
of the array is the degree bound; trailing zeros are allowed and significant
for indexing.  Whether a polynomial actually is conformal (nonvanishing
derivative on the closed disk) is certified separately by the solver, never
assumed here.

All inner products are taken over the unit disk with the area measure, so
``<z**i, z**j> = pi/(i+1)`` for ``i == j`` and ``0`` otherwise.  Products of
polynomials are never truncated: inner products of products are exact.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "as_coeffs",
    "derivative",
    "mul_naive",
    "mul_fft",
    "inner_l2",
    "inner_h1",
    "adjoint_dz",
    "evaluate",
    "monomial_weights",
]


def as_coeffs(values, n: int | None = None) -> np.ndarray:
    """Return a complex coefficient array, zero-padded to degree bound ``n``.

    Raises ValueError if ``values`` has more than ``n`` coefficients.
    """
    c = np.atleast_1d(np.asarray(values, dtype=complex))
    if c.ndim != 1:
        raise ValueError(f"coefficients must be one-dimensional, got shape {c.shape}")
    if n is None:
        return c.copy()
    if len(c) > n:
        raise ValueError(f"{len(c)} coefficients exceed degree bound {n}")
    out = np.zeros(n, dtype=complex)
    out[: len(c)] = c
    return out


@lru_cache(maxsize=256)
def _cached_weights(m: int) -> np.ndarray:
    w = np.pi / (np.arange(m) + 1.0)
    w.flags.writeable = False
    return w


def monomial_weights(m: int) -> np.ndarray:
    """Disk squared norms of the monomials: ``w[i] = <z**i, z**i> = pi/(i+1)``.

    The returned array is cached and read-only.
    """
    return _cached_weights(int(m))


def derivative(p) -> np.ndarray:
    """Coefficient array of ``p'``, same degree bound (last coefficient zero)."""
    c = np.asarray(p, dtype=complex)
    out = np.zeros_like(c)
    out[:-1] = c[1:] * np.arange(1, len(c))
    return out


def mul_naive(p, q) -> np.ndarray:
    """Exact coefficient convolution; output degree bound ``len(p)+len(q)-1``."""
    a = np.asarray(p, dtype=complex)
    b = np.asarray(q, dtype=complex)
    return np.convolve(a, b)


def mul_fft(p, q) -> np.ndarray:
    """Product via zero-padded FFT, numerically equal to :func:`mul_naive`.

    The transform length is the next power of two at or above the full
    product length, so no coefficient wraps around.
    """
    a = np.asarray(p, dtype=complex)
    b = np.asarray(q, dtype=complex)
    m = len(a) + len(b) - 1
    size = 1 << max(m - 1, 0).bit_length()
    fa = np.fft.fft(a, size)
    fb = np.fft.fft(b, size)
    return np.fft.ifft(fa * fb)[:m]


def inner_l2(p, q) -> complex:
    """Complex disk inner product ``<p, q> = sum_i p[i] conj(q[i]) pi/(i+1)``.

    Hermitian in its arguments and positive definite.  Mixed degree bounds
    are fine: coefficients beyond either bound are zero.
    """
    a = np.asarray(p, dtype=complex)
    b = np.asarray(q, dtype=complex)
    m = min(len(a), len(b))
    if m == 0:
        return 0j
    return complex(np.sum(a[:m] * np.conj(b[:m]) * monomial_weights(m)))


def inner_h1(p, q, alpha: float) -> complex:
    """Sobolev inner product ``<p, q> + alpha <p', q'>`` with ``alpha >= 0``."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    return inner_l2(p, q) + alpha * inner_l2(derivative(p), derivative(q))


def adjoint_dz(xi) -> np.ndarray:
    """Adjoint of complex differentiation on the disk: ``xi -> (z**2 xi)'``.

    Coefficient ``i`` of the input lands at coefficient ``i+1`` of the output
    with factor ``i+2``; the output degree bound grows by one.  Satisfies
    ``<xi, eta'> == <adjoint_dz(xi), eta>`` for all polynomials.
    """
    c = np.asarray(xi, dtype=complex)
    out = np.zeros(len(c) + 1, dtype=complex)
    out[1:] = c * (np.arange(len(c)) + 2)
    return out


def evaluate(p, z):
    """Evaluate the polynomial at complex point(s) ``z`` (Horner)."""
    c = np.asarray(p, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = np.full_like(z, c[-1]) if len(c) else np.zeros_like(z)
    for k in range(len(c) - 2, -1, -1):
        out = out * z + c[k]
    return out
