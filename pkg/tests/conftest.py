import pytest

from splicekit import corpus, fixtures


@pytest.fixture(scope="session")
def g1():
    return fixtures.g1()


@pytest.fixture(scope="session")
def g17():
    return fixtures.g17()


@pytest.fixture(scope="session")
def g90():
    return fixtures.g90()


@pytest.fixture(scope="session")
def star():
    return fixtures.star()


@pytest.fixture(scope="session")
def fat_branch():
    return fixtures.fat_branch()


@pytest.fixture(scope="session")
def fixture_map():
    return fixtures.fixture_graphs()


@pytest.fixture(scope="session")
def random_trees():
    return corpus.dominant_trees(100)


@pytest.fixture(scope="session")
def small_trees():
    return corpus.dominant_trees(30, max_vertices=10, seed=71)


@pytest.fixture(scope="session")
def two_node_corpus():
    return corpus.two_node_graphs(50)
