import random

from hypothesis import HealthCheck, settings, strategies as st

from chartfold.generate import random_chart

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def chart_from_seed(seed: int, alphabet: str = "perm", degrees=(2, 3, 4, 5, 6), steps=None):
    rng = random.Random(seed)
    n = rng.choice([d for d in degrees if alphabet == "perm" or d % 2 == 1])
    return random_chart(rng, n, alphabet, steps if steps is not None else rng.randint(0, 14))
