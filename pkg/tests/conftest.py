import random

import pytest

from udvs.bilinear import BackendUnavailable, MockSuite, generate_params


@pytest.fixture
def q11():
    """The hand-checkable suite: q = 11, P1 = P2 = 1."""
    return MockSuite(11, 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(params=[11, 1009, 65521])
def mock(request):
    return MockSuite(request.param, 1 + random.Random(request.param).randrange(request.param - 1))


@pytest.fixture(scope="session")
def backend():
    try:
        return generate_params(255, "backend", random.Random(99))
    except BackendUnavailable as exc:
        pytest.skip(f"no BLS12-381 engine: {exc}")


@pytest.fixture
def big_mock():
    """Large enough that accidental collisions never show up in a test run."""
    return generate_params(64, "mock", random.Random(64))


def message_with_hash(hasher, target):
    """First message ``b"m<i>"`` whose scalar hash is ``target`` (for hand-worked examples)."""
    for i in range(100_000):
        m = b"m%d" % i
        if hasher(m) == target:
            return m
    raise AssertionError("no message found")


def message_with_group_hash(ghasher, target, salt=0):
    for i in range(100_000):
        m = b"m%d" % i
        if ghasher(m, salt) == target:
            return m
    raise AssertionError("no message found")


# -- acceptance summary ------------------------------------------------------------

CRITERIA = {
    1: "correctness suites (BB, BLS) x (q=11, q<=2^16, backend)",
    2: "source hiding exact correspondence",
    3: "pairing-count audit",
    4: "re-randomization closure and freshness",
    5: "delegation-token transparency",
    6: "multi-verifier designation",
    7: "game harness sanity",
    8: "problem harness",
    9: "CLI end to end",
}
_outcomes = {}


def pytest_runtest_logreport(report):
    if not hasattr(report, "criterion"):
        return
    if report.when == "call" or report.failed or report.skipped:
        _outcomes.setdefault(report.criterion, []).append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, text in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n}: NOT RUN  {text}")
            continue
        failed = [nodeid.split("::")[-1] for nodeid, outcome in results if outcome == "failed"]
        skipped = sum(outcome == "skipped" for _, outcome in results)
        verdict = "FAIL" if failed else "PASS"
        line = f"criterion {n}: {verdict}  {text} ({len(results) - len(failed) - skipped}/{len(results)} checks)"
        if skipped:
            line += f", {skipped} skipped"
        if failed:
            line += "; failed: " + ", ".join(failed)
        tr.write_line(line)
