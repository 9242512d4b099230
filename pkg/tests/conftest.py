import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from roegen import EosParams, SolidModel, build_diagram  # noqa: E402


@pytest.fixture(scope="session")
def reduced():
    return EosParams.reduced()


@pytest.fixture(scope="session")
def ideal():
    return EosParams.ideal(R=1.0)


@pytest.fixture(scope="session")
def diagram(reduced):
    return build_diagram(reduced, SolidModel(I_t=0.55))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for (number, title), verdict in sorted(rows):
            terminalreporter.write_line(f"{verdict}  criterion {number:>2}: {title}")
