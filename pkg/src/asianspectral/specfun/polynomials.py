"""Laguerre, Hermite and generalized Bessel polynomials by three-term recurrence.

All evaluators accept scalar or numpy array x.
"""

import math
from typing import NamedTuple

import numpy as np

from ..errors import DomainError


class PolynomialSpec(NamedTuple):
    n: int
    alpha: float = 0.0
    beta: float = 1.0


def _check_n(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    return int(n)


def _out(v, x):
    return float(v) if np.ndim(x) == 0 else v


def laguerre_poly(n, alpha, x):
    """Generalized Laguerre L_n^{(alpha)}(x)."""
    n = _check_n(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return _out(prev, x)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return _out(cur, x)


def hermite_poly(n, x):
    """Physicists' Hermite H_n(x)."""
    n = _check_n(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return _out(prev, x)
    cur = 2.0 * x
    for k in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return _out(cur, x)


def bessel_poly(n, a, b, x):
    """Generalized Bessel polynomial y_n(x; a, b) = (-1)^n n! (x/b)^n L_n^{(1-2n-a)}(b/x).

    a = b = 2 gives the ordinary Bessel polynomials (y_1 = 1 + x).
    """
    n = _check_n(n)
    if b == 0:
        raise DomainError("bessel_poly needs b != 0")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise DomainError("bessel_poly needs x > 0")
    v = (-1) ** n * math.factorial(n) * (xa / b) ** n * np.asarray(laguerre_poly(n, 1 - 2 * n - a, b / xa))
    return _out(v, x)
