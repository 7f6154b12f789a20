import functools
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from lztunnel import IntegrationConfig, LzParams, propagate  # noqa: E402


@functools.lru_cache(maxsize=None)
def trajectory(eta: float, window_factor: float = 20.0):
    """Propagated run at Delta = hbar = 1, shared across tests."""
    return propagate(LzParams.from_eta(eta), IntegrationConfig(window_factor=window_factor))


ACCEPTANCE_LINES = {}


def report_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
