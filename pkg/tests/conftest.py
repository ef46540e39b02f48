import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vacdisp.montecarlo import DetectorModel, PulseModel, RangingScenario  # noqa: E402
from vacdisp.propagation import BeamPair, earth_moon_path  # noqa: E402


def make_scenario(k_true=0.0, sigma_pulse=0.0, jitter=0.0, mean=1.0, shots=10_000,
                  background=0.0, gate=10e-9, offset=0.0, atmosphere=False, plasma=False,
                  mean_high=None):
    return RangingScenario(
        path=earth_moon_path(atmosphere=atmosphere, plasma=plasma),
        beams=BeamPair.doubled(1064e-9),
        pulse=PulseModel(sigma_pulse, mean, offset, mean_high),
        detector=DetectorModel(jitter, background, gate),
        shots=shots,
        k_prime_true=k_true,
    )


@pytest.fixture
def scenario_factory():
    return make_scenario


# one PASS/FAIL line per acceptance criterion in the terminal summary
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.failed):
        name = report.nodeid.split("::")[-1]
        prev = _acceptance.get(name, "PASS")
        _acceptance[name] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{outcome}  {name}")
