import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import phientropy as pe

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

# The family sweep used across the suite (matches the acceptance grid).
FAMILY_GRID = pe.default_family_grid()

ANALYTIC_F_ZERO = {
    "shannon": lambda fam: 1.0,
    "tsallis": lambda fam: 1.0,
    "kaniadakis": lambda fam: 1.0 / (1.0 - fam.kappa**2),
    "kappa_maxwell": lambda fam: 1.0,
    "sqrt_log": lambda fam: 1.0 / 3.0,
    "piecewise_linear": lambda fam: 0.5 + 1.0 / (fam.base - 1.0),
}


@pytest.fixture(params=FAMILY_GRID, ids=lambda f: f.label)
def family(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_pdf(rng, n, sparse=False):
    w = rng.dirichlet(np.ones(n))
    if sparse and n > 1:
        kill = rng.random(n) < 0.3
        if kill.all():
            kill[0] = False
        w = np.where(kill, 0.0, w)
        w = w / w.sum()
    return pe.Pdf(w)
