import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qcurve.bundles import random_weighted
from qcurve.ncalg import random_poly

settings.register_profile("qcurve", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qcurve")

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def rng_of(seed):
    return random.Random(seed)


def poly_of(seed, maxlen=3):
    return random_poly(rng_of(seed), maxlen=maxlen, nterms=3)


def weighted_of(seed, n, maxlen=3):
    return random_weighted(rng_of(seed), n, maxlen)


@pytest.fixture
def rng():
    return random.Random(12345)
