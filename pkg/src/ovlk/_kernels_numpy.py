"""Pure-numpy implementations of the hot kernels.

Every function here has a twin with the same signature in
``_kernels_numba``; results agree to a few ulp. Minima are taken over log
densities so each node costs one ``exp`` regardless of k.
"""
import numpy as np

_LOG_SQRT_2PI = 0.9189385332046728


def log_normal_pdf(mu, sigma, x):
    z = (x - mu) / sigma
    return -0.5 * z * z - (np.log(sigma) + _LOG_SQRT_2PI)


def min_log_pdf(mu, sigma, x):
    out = log_normal_pdf(mu[0], sigma[0], x)
    for i in range(1, mu.shape[0]):
        np.minimum(out, log_normal_pdf(mu[i], sigma[i], x), out=out)
    return out


def min_normal_pdf(mu, sigma, x):
    """Pointwise minimum over k normal densities at the nodes ``x``."""
    return np.exp(min_log_pdf(mu, sigma, x))


def transformed_integrand(mu, sigma, alpha, u):
    """Minimum density pulled back to (0, 1) by the generalized logistic map."""
    log1m_u = np.log1p(-u)
    x = np.log(np.expm1(-log1m_u / alpha))
    jac = 1.0 / (alpha * (1.0 - u) * -np.expm1(log1m_u / alpha))
    return min_normal_pdf(mu, sigma, x) * jac


def comparator_group_means(values, offsets, mu, sigma):
    """Per-group mean of min_j f_j(x) / f_own(x) over the group's own observations."""
    k = offsets.shape[0] - 1
    out = np.empty(k)
    for j in range(k):
        x = values[offsets[j]:offsets[j + 1]]
        ratio = np.exp(min_log_pdf(mu, sigma, x) - log_normal_pdf(mu[j], sigma[j], x))
        out[j] = np.mean(ratio)
    return out


def softplus_sums(values, offsets):
    k = offsets.shape[0] - 1
    sp = np.logaddexp(0.0, values)
    return np.array([np.sum(sp[offsets[j]:offsets[j + 1]]) for j in range(k)])
