import os
import pathlib

import pytest

ROOT = pathlib.Path(os.environ.get("HHGQ_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture
def configs():
    return ROOT / "configs"


@pytest.fixture
def cli():
    path = os.environ.get("HHGQ_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("hhgq command-line tool not built")
    return path
