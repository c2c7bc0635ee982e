import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("WEINGARTEN_SCHEMA", ROOT / "report.schema.json")
    return json.loads(pathlib.Path(path).read_text())


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("WEINGARTEN_CLI")
    if not exe:
        pytest.skip("WEINGARTEN_CLI not set")

    def call(*args, out):
        env = {k: v for k, v in os.environ.items() if k != "WEINGARTEN_OUT"}
        return subprocess.run([exe, *args, "--out", str(out)], capture_output=True, text=True, env=env)

    return call
