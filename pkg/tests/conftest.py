import numpy as np
import pytest

from qcluster.golden import example_seed
from qcluster.projective import compute_family
from qcluster.qseed import initial_seed, principal_pair, random_acyclic_matrix, random_skew_matrix

RANK3_SEED_PATH = "demos/data/rank3_seed.json"


def random_principal_seed(rng, n, acyclic=True, bound=2):
    B = random_acyclic_matrix(rng, n, bound) if acyclic else random_skew_matrix(rng, n, bound)
    pair = principal_pair(B, [1] * n)
    return initial_seed(pair.btilde, pair.form)


def random_families(seed_value, count, max_n):
    rng = np.random.default_rng(seed_value)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        out.append(compute_family(random_principal_seed(rng, n)))
    return out


@pytest.fixture(scope="session")
def seed3():
    return example_seed()


@pytest.fixture(scope="session")
def fam3(seed3):
    return compute_family(seed3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
