"""Normal-model primitives: densities, parameter fitting and seeded sampling."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DegenerateSample, InsufficientData, ParameterError

__all__ = [
    "Convention",
    "NormalParams",
    "GroupSample",
    "FittedNormal",
    "normal_pdf",
    "fit_normal",
    "sample_normal",
    "derive_stream",
    "as_arrays",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class Convention(str, enum.Enum):
    """Variance divisor used when fitting a normal."""

    MLE = "mle"  # divisor n
    UNBIASED = "unbiased"  # divisor n - 1

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class NormalParams:
    """Location/scale of one normal population."""

    mu: float
    sigma: float

    def __post_init__(self):
        mu, sigma = float(self.mu), float(self.sigma)
        if not (math.isfinite(mu) and math.isfinite(sigma)):
            raise ParameterError(f"normal parameters must be finite, got ({mu}, {sigma})")
        if sigma <= 0.0:
            raise ParameterError(f"sigma must be > 0, got {sigma}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)


@dataclass(frozen=True, eq=False)
class GroupSample:
    """Observations from one population. ``values`` is stored read-only."""

    group_id: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise DataError(f"group {self.group_id}: sample is empty")
        if not np.all(np.isfinite(values)):
            raise DataError(f"group {self.group_id}: sample contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class FittedNormal:
    """Estimated normal parameters together with the variance convention used."""

    mu_hat: float
    sigma_hat_sq: float
    n: int
    convention: Convention

    @property
    def mu(self) -> float:
        return self.mu_hat

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma_hat_sq)


def normal_pdf(params, x):
    """Normal density of ``params`` at ``x`` (scalar or array)."""
    z = (np.asarray(x, dtype=float) - params.mu) / params.sigma
    out = (_INV_SQRT_2PI / params.sigma) * np.exp(-0.5 * z * z)
    return float(out) if out.ndim == 0 else out


def fit_normal(sample: GroupSample, convention=Convention.MLE) -> FittedNormal:
    """Sample mean and variance with divisor ``n`` (MLE) or ``n - 1`` (unbiased).

    Raises DegenerateSample when all observations coincide and
    InsufficientData for ``n < 2`` under the unbiased convention.
    """
    convention = Convention(convention)
    x = sample.values
    n = x.size
    if convention is Convention.UNBIASED and n < 2:
        raise InsufficientData(
            f"group {sample.group_id}: unbiased variance needs n >= 2, got n={n}"
        )
    if np.all(x == x[0]):
        raise DegenerateSample(f"group {sample.group_id}: all {n} observations are identical")
    mean = float(np.mean(x))
    ss = float(np.sum((x - mean) ** 2))
    divisor = n if convention is Convention.MLE else n - 1
    var = ss / divisor
    if not var > 0.0:
        raise DegenerateSample(f"group {sample.group_id}: sample variance is zero")
    return FittedNormal(mu_hat=mean, sigma_hat_sq=var, n=n, convention=convention)


def derive_stream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``key`` (e.g. scenario, cell, repetition, group).

    Streams depend only on ``(master_seed, key)``, never on the order in
    which they are created.
    """
    seq = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(seq))


def sample_normal(params: NormalParams, n: int, stream: np.random.Generator, group_id: int = 1):
    if n < 1:
        raise ParameterError(f"sample size must be >= 1, got {n}")
    z = stream.standard_normal(int(n))
    return GroupSample(group_id, params.mu + params.sigma * z)


def as_arrays(params_list):
    """Split NormalParams / FittedNormal objects into contiguous mu and sigma arrays."""
    mu = np.array([p.mu for p in params_list], dtype=float)
    sigma = np.array([p.sigma for p in params_list], dtype=float)
    return mu, sigma
