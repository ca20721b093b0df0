"""Both kernel backends must agree; the active one is chosen by OVLK_DISABLE_NUMBA."""
import os
import subprocess
import sys

import numpy as np
import pytest

from ovlk import _kernels_numba as nbk
from ovlk import _kernels_numpy as npk
from ovlk._backend import BACKEND, ENV_FLAG

rng = np.random.default_rng(2024)
MU = rng.normal(0, 2, 4)
SIGMA = rng.uniform(0.3, 2.5, 4)


def test_min_normal_pdf_agree():
    x = np.linspace(-15, 15, 10001)
    np.testing.assert_allclose(nbk.min_normal_pdf(MU, SIGMA, x), npk.min_normal_pdf(MU, SIGMA, x), rtol=1e-13, atol=0)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.3])
def test_transformed_integrand_agree(alpha):
    u = np.arange(1, 400) / 400
    np.testing.assert_allclose(
        nbk.transformed_integrand(MU, SIGMA, alpha, u), npk.transformed_integrand(MU, SIGMA, alpha, u), rtol=1e-12
    )


def test_group_kernels_agree():
    values = rng.normal(0, 3, 90)
    offsets = np.array([0, 20, 50, 90])
    mu, sigma = MU[:3], SIGMA[:3]
    np.testing.assert_allclose(
        nbk.comparator_group_means(values, offsets, mu, sigma),
        npk.comparator_group_means(values, offsets, mu, sigma),
        rtol=1e-13,
    )
    values[:5] = [-800, -40, 0, 40, 800]
    np.testing.assert_allclose(nbk.softplus_sums(values, offsets), npk.softplus_sums(values, offsets), rtol=1e-14)


def test_env_flag_selects_numpy():
    env = dict(os.environ, **{ENV_FLAG: "1"})
    out = subprocess.run(
        [sys.executable, "-c", "import ovlk; print(ovlk.BACKEND)"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == "numpy"
    assert BACKEND in ("numba", "numpy")
