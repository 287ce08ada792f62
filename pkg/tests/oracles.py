"""Independent numerical oracles for the test suite.

These deliberately avoid the package's own algebra: the matrix
exponential is generic scaling-and-squaring with a Taylor core, Laurent
coefficients come from trapezoid circle contours, and derivatives come
from finite-difference stencils.  Each oracle checks a closed-form or
exact-algebra code path through an unrelated computation.
"""

import numpy as np


def matrix_exp(M, ntaylor=24):
    """Scaling-and-squaring matrix exponential with a Taylor core."""
    M = np.asarray(M, dtype=complex)
    norm = float(np.max(np.sum(np.abs(M), axis=1)))
    nsquare = 0
    if norm > 0.25:
        nsquare = int(np.ceil(np.log2(norm))) + 2
    SM = M / 2.0 ** nsquare
    EM = np.eye(M.shape[0], dtype=complex)
    term = np.eye(M.shape[0], dtype=complex)
    for i in range(1, ntaylor + 1):
        term = term @ SM / i
        EM = EM + term
    for _ in range(nsquare):
        EM = EM @ EM
    return EM


def circle_laurent(fn, center, n, radius=1e-3, points=64):
    """Laurent coefficient a_{-n} at ``center`` by a trapezoid circle contour.

    a_{-n} = (1/2*pi*i) * closed integral of fn(z) (z - center)^(n-1) dz;
    the trapezoid rule is spectrally accurate for the analytic circle
    parameterization.
    """
    phi = 2.0 * np.pi * np.arange(points) / points
    z = center + radius * np.exp(1j * phi)
    vals = np.asarray([fn(zz) for zz in z], dtype=complex)
    return radius ** n * np.mean(vals * np.exp(1j * n * phi))


def circle_residue(fn, center, radius=1e-3, points=64):
    return circle_laurent(fn, center, 1, radius=radius, points=points)


def fd_stencil(k, half_width):
    """Central finite-difference weights for the k-th derivative.

    Returns offsets -M..M and weights w with
    f^(k)(z) ~ sum w_i f(z + i*h) / h**k, accurate to O(h**(2M+1-k)).
    """
    import math
    M = half_width
    offsets = np.arange(-M, M + 1, dtype=float)
    A = np.vander(offsets, 2 * M + 1, increasing=True).T
    rhs = np.zeros(2 * M + 1)
    rhs[k] = float(math.factorial(k))
    w = np.linalg.solve(A, rhs)
    return offsets, w


def fd_derivative(fn, z, k, h=1e-3, half_width=None):
    """k-th derivative of fn at z by a central stencil along the real
    direction in the argument."""
    if half_width is None:
        half_width = max(2, k)
    offsets, w = fd_stencil(k, half_width)
    vals = np.asarray([fn(z + o * h) for o in offsets], dtype=complex)
    return complex(np.dot(w, vals) / h ** k)
