import pytest

from helpers import make_example_flow, make_example_network


@pytest.fixture
def example_net():
    return make_example_network()


@pytest.fixture
def example_flow():
    return make_example_flow()


@pytest.fixture(scope="session")
def data_dir():
    from helpers import DATA

    return DATA
