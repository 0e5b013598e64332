import pytest

from hyperspace import GroundSpace


@pytest.fixture
def line():
    return GroundSpace.real_line()


@pytest.fixture
def discrete():
    return GroundSpace.discrete_line()


@pytest.fixture
def plane():
    return GroundSpace.euclidean(2)


@pytest.fixture
def metro():
    return GroundSpace.french_metro()


@pytest.fixture
def seqs():
    return GroundSpace.sequences()


@pytest.fixture(scope="session")
def builtin_reports():
    """Every built-in scenario run once per session, keyed by id."""
    from hyperspace.scenarios import BUILTIN_IDS, builtin_scenario, run_scenario

    return {name: run_scenario(builtin_scenario(name), timing=False) for name in BUILTIN_IDS}
