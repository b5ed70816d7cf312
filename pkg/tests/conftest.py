import numpy as np
import pytest

from brouwerlab.algebra import from_upsets
from brouwerlab.order import canned_poset


@pytest.fixture(scope="session")
def fork():
    return canned_poset("fork")


@pytest.fixture(scope="session")
def chain2():
    return canned_poset("chain", 2)


@pytest.fixture(scope="session")
def fork_algebra(fork):
    return from_upsets(fork)


@pytest.fixture(scope="session")
def chain3_algebra(chain2):
    # up-sets of the 2-chain: a 3-chain algebra
    return from_upsets(chain2)


def make_poset_matrix(pairs, n):
    """Reflexive matrix from strict pairs; transitivity is the caller's duty."""
    mat = np.eye(n, dtype=bool)
    for i, j in pairs:
        mat[i, j] = True
    return mat
