import random

import pytest

from logcy2.sampling import seed_from_env


@pytest.fixture
def srng() -> random.Random:
    """Seeded RNG; set LOGCY2_SEED to reproduce a run."""
    return random.Random(seed_from_env())
