import pytest
from hypothesis import settings

from charp.root_datum import RootDatum

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def rd():
    cache = {}

    def get(name: str) -> RootDatum:
        if name not in cache:
            cache[name] = RootDatum.build(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
