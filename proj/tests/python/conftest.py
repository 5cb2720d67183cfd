import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def report_schema():
    path = os.environ.get("KROPINA_SCHEMA", ROOT / "schemas" / "report.schema.json")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
