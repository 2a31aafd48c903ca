import pytest

from congruence.dvr import RatFuncLocal, ZLocal


@pytest.fixture(params=["ZLocal(5)", "RatFuncLocal(3)", "ZLocal(2)"])
def spec(request):
    kind, p = request.param.rstrip(")").split("(")
    return ZLocal(int(p)) if kind == "ZLocal" else RatFuncLocal(int(p))


@pytest.fixture
def z5():
    return ZLocal(5)


def pytest_terminal_summary(terminalreporter):
    lines = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion[" in nodeid and rep.when == "call":
                n = int(nodeid.rsplit("[", 1)[1].rstrip("]"))
                lines[n] = "PASS" if key == "passed" else "FAIL"
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(f"criterion {n}: {lines[n]}")
