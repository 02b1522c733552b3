"""Shared fixtures: cached preset sweeps and the acceptance report."""

import pytest

from hulthen_dirac.sweeps import find_resonances, preset, run_sweep

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


class PresetCache:
    """Analytic preset sweeps and their refined resonances, computed once per session."""

    def __init__(self):
        self._sweeps = {}
        self._peaks = {}

    def sweep(self, name, points=512):
        key = (name, points)
        if key not in self._sweeps:
            self._sweeps[key] = run_sweep(preset(name, points=points))
        return self._sweeps[key]

    def resonances(self, name, points=512):
        key = (name, points)
        if key not in self._peaks:
            self._peaks[key] = find_resonances(self.sweep(name, points), refine=True)
        return self._peaks[key]


@pytest.fixture(scope="session")
def presets():
    return PresetCache()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        )
