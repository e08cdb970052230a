from __future__ import annotations

from contextlib import contextmanager

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion.

    Usage::

        with criterion(3, "Schatten chain") as note:
            note["detail"] = "..."
            assert ...
    """
    lines = request.config.stash[_ACCEPTANCE]

    @contextmanager
    def record(number, title):
        note = {"detail": ""}
        try:
            yield note
        except BaseException:
            lines.append((number, False, title, note["detail"]))
            print(_format(number, False, title, note["detail"]))
            raise
        lines.append((number, True, title, note["detail"]))
        print(_format(number, True, title, note["detail"]))

    return record


def _format(number, ok, title, detail):
    tail = f" ({detail})" if detail else ""
    return f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}{tail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(lines, key=lambda e: e[0]):
        terminalreporter.write_line(_format(*entry))
