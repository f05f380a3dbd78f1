import pytest

from fsdim.cli import gen_pool
from fsdim.fst import Fst, make_identity

POOL_SEED = 20260823
POOL_COUNT = 200


@pytest.fixture(scope="session")
def pool():
    """Seeded pool used by the acceptance criteria: base 2, <= 4 states,
    output bursts of length <= 2."""
    return gen_pool(POOL_SEED, POOL_COUNT, max_states=4, base=2, max_burst=2)


@pytest.fixture(scope="session")
def identity2():
    return make_identity(2)


@pytest.fixture(scope="session")
def doubling2():
    """One state, every symbol emitted twice."""
    return Fst(2, 1, 0, (((0, (0, 0)), (0, (1, 1))),))


def all_words(base: int, max_len: int):
    words = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + chr(48 + d) for w in frontier for d in range(base)]
        words.extend(frontier)
    return words
