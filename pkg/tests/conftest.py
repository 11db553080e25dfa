import pytest

from corpus import FIXTURES, IMPORTS
from cubnull.workspace import Workspace


@pytest.fixture(scope="session")
def ws():
    w = Workspace(imports=IMPORTS)
    w.load(FIXTURES)
    return w
