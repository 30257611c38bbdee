import json
from pathlib import Path

import pytest

from codeweft.corpus import example_path

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def parser_goldens():
    return json.loads((DATA / "parser_goldens.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def percent_fixture():
    return json.loads((DATA / "percent_fixture.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def example_scripts():
    return [str(example_path("example_analysis.R")), str(example_path("example_plot.R"))]
