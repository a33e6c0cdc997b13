import json
from pathlib import Path

import pytest
from hypothesis import settings

from mlrecon.seqcore import Word

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return json.loads(Path(__file__).with_name("golden.json").read_text())


def W(s: str, q: int = 2) -> Word:
    return Word.parse(s, q)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: int(k[1:])):
        ok, detail = results[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")
