"""Numba-compiled twins of ``_kernels_numpy``.

Loops are written out so the k-way minimum is fused into a single pass
without temporaries. ``nogil`` lets the simulation's thread pool run
repetitions concurrently.
"""
import math

import numba as nb
import numpy as np

_LOG_SQRT_2PI = 0.9189385332046728

_jit = nb.njit(cache=True, nogil=True)


@_jit
def _min_log_pdf(mu, logc, sigma, x):
    # logc[i] = log(sigma[i]) + log(sqrt(2 pi)), hoisted out of the node loop
    z = (x - mu[0]) / sigma[0]
    m = -0.5 * z * z - logc[0]
    for i in range(1, mu.shape[0]):
        z = (x - mu[i]) / sigma[i]
        v = -0.5 * z * z - logc[i]
        if v < m:
            m = v
    return m


@_jit
def _log_consts(sigma):
    out = np.empty(sigma.shape[0])
    for i in range(sigma.shape[0]):
        out[i] = math.log(sigma[i]) + _LOG_SQRT_2PI
    return out


@_jit
def min_normal_pdf(mu, sigma, x):
    logc = _log_consts(sigma)
    out = np.empty(x.shape[0])
    for n in range(x.shape[0]):
        out[n] = math.exp(_min_log_pdf(mu, logc, sigma, x[n]))
    return out


@_jit
def transformed_integrand(mu, sigma, alpha, u):
    logc = _log_consts(sigma)
    out = np.empty(u.shape[0])
    for n in range(u.shape[0]):
        log1m_u = math.log1p(-u[n])
        x = math.log(math.expm1(-log1m_u / alpha))
        jac = 1.0 / (alpha * (1.0 - u[n]) * -math.expm1(log1m_u / alpha))
        out[n] = math.exp(_min_log_pdf(mu, logc, sigma, x)) * jac
    return out


@_jit
def comparator_group_means(values, offsets, mu, sigma):
    logc = _log_consts(sigma)
    k = offsets.shape[0] - 1
    out = np.empty(k)
    for j in range(k):
        acc = 0.0
        for n in range(offsets[j], offsets[j + 1]):
            x = values[n]
            z = (x - mu[j]) / sigma[j]
            own = -0.5 * z * z - logc[j]
            acc += math.exp(_min_log_pdf(mu, logc, sigma, x) - own)
        out[j] = acc / (offsets[j + 1] - offsets[j])
    return out


@_jit
def softplus_sums(values, offsets):
    k = offsets.shape[0] - 1
    out = np.empty(k)
    for j in range(k):
        acc = 0.0
        for n in range(offsets[j], offsets[j + 1]):
            x = values[n]
            if x > 0.0:
                acc += x + math.log1p(math.exp(-x))
            else:
                acc += math.log1p(math.exp(x))
        out[j] = acc
    return out
