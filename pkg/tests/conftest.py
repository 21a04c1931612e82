import os
from math import gcd, prod

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


SMALL_D = [1, 2, 3, 5, 7]


@st.composite
def coprime_ds(draw, min_k=2, max_k=4):
    """Pairwise coprime cofactor gcds; 1 may repeat."""
    k = draw(st.integers(min_k, max_k))
    ds = []
    for _ in range(k):
        choices = [x for x in SMALL_D if x == 1 or all(gcd(x, y) == 1 for y in ds)]
        ds.append(draw(st.sampled_from(choices)))
    return tuple(ds)


def weights_from_d(d):
    return tuple(prod(d[:i] + d[i + 1:]) for i in range(len(d)))


@st.composite
def minimal_weights(draw, min_k=2, max_k=4):
    return weights_from_d(draw(coprime_ds(min_k, max_k)))


NAMED = [(2, 3), (1, 1), (6, 10, 15), (2, 2, 1), (1, 1, 1), (6, 10, 15, 30), (2, 2, 1, 2)]
