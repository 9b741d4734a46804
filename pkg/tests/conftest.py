import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from react_irs.files import data_dir, load_catalog, load_scenario


@pytest.fixture(scope="session")
def data() -> Path:
    return data_dir()


@pytest.fixture(scope="session")
def scenario1(data):
    return load_scenario(data / "scenario1.json")


@pytest.fixture(scope="session")
def scenario2(data):
    return load_scenario(data / "scenario2.json")


@pytest.fixture(scope="session")
def demo_scenario(data):
    return load_scenario(data / "demo.json")


@pytest.fixture(scope="session")
def generic_catalog(data):
    return load_catalog(data / "catalog_generic.json")
