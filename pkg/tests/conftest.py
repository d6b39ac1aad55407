import functools

import pytest

from cpbnr.cli import simulate
from cpbnr.config import PRESETS, parse_config

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def _simulate_rendered(rendered):
    return simulate(parse_config(rendered))


def preset_observables(name):
    """Observables of a preset, shared across tests (presets differing only in labels reuse one run)."""
    cfg = parse_config(preset=name).with_values(**{"spectrum.enabled": False})
    return _simulate_rendered(cfg.render())[0]


@pytest.fixture(scope="session")
def all_preset_observables():
    return {name: preset_observables(name) for name in PRESETS}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
