import numpy as np
import pytest

from abssep.fixtures import get_fixture
from abssep.spectrum import Dims

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


@pytest.fixture
def criterion(request):
    """Records one PASS/FAIL line for an acceptance criterion.

    Use as ``criterion(3, "short title")`` at the top of the test.
    """
    slot = {}

    def start(number, title):
        slot["key"] = (number, title)

    yield start
    rep = getattr(request.node, "rep_call", None)
    if "key" in slot and rep is not None:
        number, title = slot["key"]
        status = "PASS" if rep.passed else "FAIL"
        line = f"criterion {number:>2} {status}  {title}"
        if rep.failed:
            msg = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else ""
            line += f"  [{msg.splitlines()[0][:160] if msg else 'failed'}]"
        _ACCEPTANCE.setdefault(number, []).append(line)
        print("\n" + line)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        for line in _ACCEPTANCE[number]:
            terminalreporter.write_line(line)


@pytest.fixture
def ex1():
    return get_fixture("example1").spectrum()


@pytest.fixture
def ex1b():
    return get_fixture("example1_part2").spectrum()


@pytest.fixture
def ex2():
    return get_fixture("example2").spectrum()


@pytest.fixture
def ex2b():
    return get_fixture("example2_part2").spectrum()


def shrunk_dirichlet(dims: Dims, count: int, seed: int) -> np.ndarray:
    """Flat-Dirichlet spectra pulled toward the maximally mixed point.

    Flat sampling almost never yields absolutely PPT spectra beyond 2x2, so
    tests of the "yes" direction mix in ``I/N`` with a random weight.
    """
    rng = np.random.default_rng(seed)
    N = dims.total
    V = rng.dirichlet(np.ones(N), count)
    w = rng.random((count, 1)) ** 3
    return -np.sort(-(w * V + (1 - w) / N), axis=1)
