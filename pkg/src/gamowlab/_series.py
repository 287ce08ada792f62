"""Truncated power-series arithmetic on plain complex coefficient arrays.

Coefficients are ascending (c[k] multiplies x**k).  These are the exact
local building blocks behind Laurent data, energy-derivative functionals,
and oscillatory-tail corrections; everything here is plain recurrence
algebra, no quadrature.
"""

from __future__ import annotations

import numpy as np


def syndiv(a, c):
    """Synthetic division of p by (x - c): returns (quotient, remainder)."""
    a = np.asarray(a, dtype=complex)
    d = len(a) - 1
    if d < 1:
        return np.zeros(0, dtype=complex), a[0] if len(a) else 0j
    q = np.zeros(d, dtype=complex)
    q[d - 1] = a[d]
    for i in range(d - 1, 0, -1):
        q[i - 1] = a[i] + c * q[i]
    r = a[0] + c * q[0]
    return q, r


def poly_shift(coeffs, c):
    """Taylor coefficients of p at the point c: p(c + d) = sum out[k]*d**k.

    Repeated synthetic division by (x - c); exact polynomial algebra.
    """
    a = np.asarray(coeffs, dtype=complex)
    out = np.zeros(len(a), dtype=complex)
    for k in range(len(a)):
        a, out[k] = syndiv(a, c)
        if len(a) == 0:
            break
    return out


def series_mul(a, b, n):
    """Cauchy product truncated to n coefficients."""
    a = np.asarray(a, dtype=complex)[:n]
    b = np.asarray(b, dtype=complex)[:n]
    out = np.zeros(n, dtype=complex)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        top = min(n - i, len(b))
        out[i : i + top] += ai * b[:top]
    return out


def series_div(a, b, n):
    """Series quotient a/b truncated to n coefficients; requires b[0] != 0."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if len(b) == 0 or b[0] == 0:
        raise ZeroDivisionError("series division needs a unit constant term")
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        acc = a[k] if k < len(a) else 0j
        top = min(k, len(b) - 1)
        for j in range(1, top + 1):
            acc -= b[j] * out[k - j]
        out[k] = acc / b[0]
    return out


def series_compose(outer, inner, n):
    """Composition outer(inner(x)) truncated to n coefficients.

    Requires inner[0] == 0 (expansion about the composition point).
    Horner scheme on the truncated outer series.
    """
    inner = np.asarray(inner, dtype=complex)[:n]
    if len(inner) and inner[0] != 0:
        raise ValueError("series composition needs inner[0] == 0")
    outer = np.asarray(outer, dtype=complex)
    out = np.zeros(n, dtype=complex)
    if len(outer) == 0:
        return out
    for c in outer[::-1]:
        out = series_mul(out, inner, n)
        out[0] += c
    return out


def sqrt_branch_series(w0, n):
    """Series of the root w(eps) of w**2 = w0**2 + eps passing through w0.

    Expands w = w0*sqrt(1 + eps/w0**2) about eps = 0 via the binomial
    series; out[0] = w0.  This is the sheet-consistent local inverse of
    E = w**2 used by energy-derivative functionals.
    """
    out = np.zeros(n, dtype=complex)
    out[0] = w0
    coeff = 1.0 + 0j
    for k in range(1, n):
        coeff *= (0.5 - (k - 1)) / k
        out[k] = w0 * coeff / w0 ** (2 * k)
    return out
