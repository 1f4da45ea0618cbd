import pytest

from groupoids import core, groups

# one pass/fail line per acceptance criterion, printed after the test run
ACCEPTANCE_LINES = []


def record_acceptance(number, description, elapsed, passed=True):
    ACCEPTANCE_LINES.append(
        "criterion %02d %s (%.2fs): %s"
        % (number, "PASS" if passed else "FAIL", elapsed, description))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def s3_groupoid():
    return core.from_group(groups.symmetric3())


@pytest.fixture
def s3_two_objects():
    return core.trg(groups.symmetric3(), 2)


@pytest.fixture
def pair3():
    return core.pair_groupoid(3)


@pytest.fixture
def two_component():
    return core.coproduct([core.from_group(groups.cyclic(2)),
                           core.pair_groupoid(2)])
