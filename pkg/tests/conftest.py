import pytest
from hypothesis import HealthCheck, settings

from eulerdie import complexes, posets
from eulerdie.corpus import FIG1_POSET, FIG2_POSET, FIG3_COMPLEX, FIG4_COMPLEX, FIG4_PARTITION

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fig1():
    return posets.parse_poset(FIG1_POSET)


@pytest.fixture
def fig2():
    return posets.parse_poset(FIG2_POSET)


@pytest.fixture
def fig3():
    return complexes.complex_from_json(FIG3_COMPLEX)


@pytest.fixture
def fig4():
    return complexes.complex_from_json(FIG4_COMPLEX)


@pytest.fixture
def fig4_partition(fig4):
    return complexes.partition_from_json(fig4, FIG4_PARTITION)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            lines += [(n, v) for k, (n, v) in getattr(rep, "user_properties", []) if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
