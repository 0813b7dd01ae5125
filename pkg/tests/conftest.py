import re
import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

CRITERIA = {
    1: "Descartes closure of the (-1,2,2,3) packing to curvature 1000",
    2: "duality involution",
    3: "golden hierarchy",
    4: "diamond hierarchy",
    5: "symmetric orbit",
    6: "boundary maps and mirrors",
    7: "continued fractions of the scaling factor",
    8: "Pythagorean correspondence and parity classes",
    9: "homogeneous identity and cross-ratio invariance",
    10: "group strings",
    11: "Lorentz quadruples",
}

_results: dict[int, list[tuple[str, bool]]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_c(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append((m.group(2), report.outcome == "passed"))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        checks = _results[n]
        ok = all(passed for _, passed in checks)
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {CRITERIA.get(n, '')}"
        if not ok:
            failed = [name for name, passed in checks if not passed]
            line += f" (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)
