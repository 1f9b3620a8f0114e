import sys

import pytest

from infbranch import parse_polynomial

# curves from the worked examples
QUINTIC = "y^5-4*y^4*x+4*y^3*x^2+2*y^2*x-y^2*x^2+2*y*x^2+2*y*x^3+x+x^2"
PAIR_F = "2*y^3*x-y^4+2*y^2*x-y^3-2*x^3+x^2*y+3"
APPROACH_FBAR = "y^3*x-y^4+y^2*x-y^3-x^3+x^2*y+2"
BEHAVIOR_FBAR = "2*y^3*x-y^4+2*y^2*x-y^3-2*x^3+x^2*y-3*x^2-x*y+2*x-3*y+1"
QUARTIC = "y^4-2*x*y^2+x^2-y"
PARABOLA = "y^2-x"

REFERENCE_CURVES = {
    "quintic": QUINTIC,
    "pair_f": PAIR_F,
    "approach_fbar": APPROACH_FBAR,
    "behavior_fbar": BEHAVIOR_FBAR,
    "quartic": QUARTIC,
    "parabola": PARABOLA,
}


@pytest.fixture(scope="session")
def curves():
    return {k: parse_polynomial(v) for k, v in REFERENCE_CURVES.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in mod.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
