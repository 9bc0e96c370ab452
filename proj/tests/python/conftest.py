import os
import pathlib

import pytest


@pytest.fixture
def fixtures():
    return pathlib.Path(os.environ.get("PROVSUM_FIXTURE_DIR", pathlib.Path(__file__).parents[1] / "fixtures"))
