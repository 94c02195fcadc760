from pathlib import Path

import pytest

from truthpoint import Workspace

ROOT = Path(__file__).resolve().parent.parent
WORKSPACES = ROOT / "workspaces"
FIXTURES = sorted(p.name for p in WORKSPACES.iterdir() if p.is_dir())

ACCEPTANCE_LINES: list = []


def load_fixture(name: str) -> Workspace:
    d = WORKSPACES / name
    model = d / "model.txt"
    return Workspace.load(d / "defs.txt", model if model.exists() else None)


@pytest.fixture
def fixture_ws():
    return load_fixture


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
