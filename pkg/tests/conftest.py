import pytest

from loopcheck.catalog import example21_star, example21_dot, generate_loops
from loopcheck.table import cyclic_group, make_loop


@pytest.fixture(scope="session")
def star():
    return example21_star()


@pytest.fixture(scope="session")
def dot():
    return example21_dot()


@pytest.fixture(scope="session")
def c5():
    return cyclic_group(5)


@pytest.fixture(scope="session")
def c7():
    return cyclic_group(7)


@pytest.fixture(scope="session")
def s3():
    """The symmetric group on 3 points, built from permutation composition."""
    from itertools import permutations

    elems = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    rows = [
        [index[tuple(q[p[x]] for x in range(3))] for q in elems] for p in elems
    ]
    return make_loop(rows, name="s3")


def catalog(n):
    return generate_loops(n)


@pytest.fixture(scope="session")
def catalog5():
    return catalog(5)


@pytest.fixture(scope="session")
def catalog6():
    return catalog(6)
