"""Compiled inner loops for stress + gradient over all pairs j < k.

Both kernels evaluate E = c * sum_{j<k} C[j,k] * (d_jk - a*delta[j,k])**2 and,
when asked, the packed gradient g_j = dE/dx_j + i dE/dy_j.  Pairs with
C[j,k] == 0 are skipped entirely.  Summation order is fixed (row-major over
the upper triangle) so results are reproducible bit for bit.
"""

import math

import numpy as np
from numba import njit

# status codes returned alongside the result
OK = 0
COINCIDENT = 1


@njit(cache=True)
def hyperbolic_stress(z, delta, coef, c, a, want_grad):
    n = z.shape[0]
    nz = np.empty(n)
    for j in range(n):
        m = abs(z[j])
        nz[j] = (1.0 - m) * (1.0 + m)
    g = np.zeros(n, dtype=np.complex128)
    acc = 0.0
    for j in range(n):
        zj = z[j]
        for k in range(j + 1, n):
            cjk = coef[j, k]
            if cjk == 0.0:
                continue
            diff = zj - z[k]
            dist2 = diff.real * diff.real + diff.imag * diff.imag
            b = nz[j] * nz[k]
            absdiff = math.sqrt(dist2)
            d = 2.0 * math.asinh(absdiff / math.sqrt(b))
            res = d - a * delta[j, k]
            acc += cjk * res * res
            if want_grad:
                if absdiff == 0.0:
                    return acc * c, g, COINCIDENT
                # d(d_jk)/dz_j = 2[(z_j - z_k) + |z_j - z_k|^2 z_j / (1-|z_j|^2)] / (|z_j - z_k| |1 - z_j conj(z_k)|)
                f = 2.0 * c * cjk * res * 2.0 / (absdiff * math.sqrt(dist2 + b))
                g[j] += f * (diff + dist2 * zj / nz[j])
                g[k] += f * (-diff + dist2 * z[k] / nz[k])
    return acc * c, g, OK


@njit(cache=True)
def euclidean_stress(z, delta, coef, c, a, want_grad):
    n = z.shape[0]
    g = np.zeros(n, dtype=np.complex128)
    acc = 0.0
    for j in range(n):
        zj = z[j]
        for k in range(j + 1, n):
            cjk = coef[j, k]
            if cjk == 0.0:
                continue
            diff = zj - z[k]
            d = math.sqrt(diff.real * diff.real + diff.imag * diff.imag)
            res = d - a * delta[j, k]
            acc += cjk * res * res
            if want_grad:
                if d == 0.0:
                    return acc * c, g, COINCIDENT
                f = 2.0 * c * cjk * res / d
                g[j] += f * diff
                g[k] -= f * diff
    return acc * c, g, OK
