import os

import numpy as np
import pytest
from hypothesis import settings

from groupdist.catalog import catalog
from groupdist.groups import apply_bijection

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")

SLOW = os.environ.get("GROUPDIST_SLOW") == "1"


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GH_CACHE_DIR", str(tmp_path / "cache"))


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="long-running; set GROUPDIST_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def relabel(t, perm):
    """Relabel ``t`` by a permutation, keeping the result a valid table."""
    return apply_bijection(t, np.asarray(perm))


def catalog_tables(orders):
    return [(n, name, t) for n in orders for name, t in catalog(n)]


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
