"""Plug-in estimators of the overlap of k normal populations.

Two families:

* Simpson estimators integrate the minimum of the fitted densities after the
  generalized logistic change of variables, with the shape alpha fixed or
  estimated from the data.
* The comparator averages, over groups, the mean ratio of the minimum fitted
  density to the group's own fitted density at the group's observations.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .distributions import Convention, as_arrays, fit_normal
from .errors import DegenerateAlpha, NonFiniteEvaluation, ParameterError
from .quadrature import open_unit_sum

__all__ = [
    "EstimatorSpec",
    "Estimate",
    "min_density",
    "estimate_alpha",
    "simpson_ovl_estimate",
    "comparator_estimate",
    "evaluate",
    "resolve_r",
]

SIMPSON = "simpson"
COMPARATOR = "comparator"
ML = "ml"


@dataclass(frozen=True)
class EstimatorSpec:
    """Which estimator to run and how.

    ``alpha`` is a positive number or ``"ml"`` (data-driven) for Simpson
    estimators and ``None`` for the comparator. ``r`` is ``"auto"`` (smallest
    group size rounded up to even) or a fixed even integer >= 4.
    """

    kind: str
    alpha: float | str | None = None
    r: int | str = "auto"
    convention: Convention | None = None

    def __post_init__(self):
        if self.kind not in (SIMPSON, COMPARATOR):
            raise ParameterError(f"unknown estimator kind {self.kind!r}")
        if self.kind == SIMPSON:
            alpha = self.alpha if self.alpha is not None else 1.0
            if alpha != ML:
                alpha = float(alpha)
                if not (math.isfinite(alpha) and alpha > 0):
                    raise ParameterError(f"alpha must be positive or 'ml', got {self.alpha!r}")
            object.__setattr__(self, "alpha", alpha)
            if self.r != "auto":
                if isinstance(self.r, bool) or int(self.r) != self.r or self.r < 4 or self.r % 2:
                    raise ParameterError(f"r must be 'auto' or an even integer >= 4, got {self.r!r}")
                object.__setattr__(self, "r", int(self.r))
        else:
            if self.alpha is not None:
                raise ParameterError("the comparator takes no alpha")
        default = Convention.MLE if self.kind == SIMPSON else Convention.UNBIASED
        object.__setattr__(self, "convention", Convention(self.convention or default))

    @classmethod
    def simpson(cls, alpha=1.0, r="auto", convention=Convention.MLE):
        return cls(SIMPSON, alpha, r, convention)

    @classmethod
    def comparator(cls, convention=Convention.UNBIASED):
        return cls(COMPARATOR, None, "auto", convention)

    @property
    def is_comparator(self):
        return self.kind == COMPARATOR

    @property
    def alpha_label(self):
        if self.kind == COMPARATOR:
            return ""
        return ML if self.alpha == ML else f"{self.alpha:g}"

    @property
    def label(self):
        """Short name, e.g. ``simpson(1)``, ``simpson(ml)``, ``comparator``."""
        if self.kind == COMPARATOR:
            return COMPARATOR
        return f"{SIMPSON}({self.alpha_label})"

    @property
    def name(self):
        """Kind and variance convention, e.g. ``simpson-mle``."""
        return f"{self.kind}-{self.convention.value}"


@dataclass(frozen=True)
class Estimate:
    value: float
    raw: float
    alpha: float | None
    r: int | None
    convention: Convention


def resolve_r(r, sizes):
    if r == "auto":
        m = min(sizes)
        return max(4, m + m % 2)
    return int(r)


@functools.lru_cache(maxsize=64)
def _unit_nodes(r):
    u = np.arange(1, r) / r
    u.setflags(write=False)
    return u


def _pack(samples):
    values = np.concatenate([s.values for s in samples])
    offsets = np.zeros(len(samples) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([s.n for s in samples])
    return values, offsets


def min_density(params_list, x):
    """Pointwise minimum of the k normal densities at ``x`` (scalar or array)."""
    mu, sigma = as_arrays(params_list)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = kernels.min_normal_pdf(mu, sigma, xa.ravel()).reshape(xa.shape)
    return float(out[0]) if np.ndim(x) == 0 else out


def estimate_alpha(samples):
    """Data-driven transform shape: mean over groups of n_j / sum_i softplus(x_ij)."""
    samples = list(samples)
    if not samples:
        raise ParameterError("need at least one group")
    values, offsets = _pack(samples)
    sums = kernels.softplus_sums(values, offsets)
    if np.any(sums <= 0.0):
        j = int(np.argmax(sums <= 0.0))
        raise DegenerateAlpha(f"group {samples[j].group_id}: softplus sum underflowed to zero")
    return math.fsum(s.n / t for s, t in zip(samples, sums)) / len(samples)


def simpson_ovl_estimate(fits, alpha, r, full_output=False):
    """Open Simpson rule on the transformed minimum of the fitted densities.

    ``fits`` may hold FittedNormal or NormalParams objects. The value is
    clamped to [0, 1]; ``full_output`` also returns the raw sum.
    """
    fits = list(fits)
    if len(fits) < 1:
        raise ParameterError("need at least one density")
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if int(r) != r or r < 4 or r % 2:
        raise ParameterError(f"r must be an even integer >= 4, got {r}")
    mu, sigma = as_arrays(fits)
    y = kernels.transformed_integrand(mu, sigma, alpha, _unit_nodes(int(r)))
    if not np.all(np.isfinite(y)):
        raise NonFiniteEvaluation("transformed integrand is not finite at an interior node")
    raw = float(open_unit_sum(y))
    value = min(max(raw, 0.0), 1.0)
    return (value, raw) if full_output else value


def comparator_estimate(samples, convention=Convention.UNBIASED):
    """Group-averaged mean of min-density / own-density at the observations."""
    samples = list(samples)
    if len(samples) < 2:
        raise ParameterError(f"need at least two groups, got {len(samples)}")
    fits = [fit_normal(s, convention) for s in samples]
    mu, sigma = as_arrays(fits)
    values, offsets = _pack(samples)
    means = kernels.comparator_group_means(values, offsets, mu, sigma)
    # fsum makes the group average exactly order independent
    return math.fsum(means) / len(samples)


def evaluate(spec: EstimatorSpec, samples) -> Estimate:
    """Run one estimator on k samples."""
    samples = list(samples)
    if len(samples) < 2:
        raise ParameterError(f"need at least two groups, got {len(samples)}")
    if spec.is_comparator:
        v = comparator_estimate(samples, spec.convention)
        return Estimate(v, v, None, None, spec.convention)
    fits = [fit_normal(s, spec.convention) for s in samples]
    alpha = estimate_alpha(samples) if spec.alpha == ML else spec.alpha
    r = resolve_r(spec.r, [s.n for s in samples])
    value, raw = simpson_ovl_estimate(fits, alpha, r, full_output=True)
    return Estimate(value, raw, alpha, r, spec.convention)

