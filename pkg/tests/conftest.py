from __future__ import annotations

import pytest
from hypothesis import settings

from askdb.catalog import load_builtin_catalog
from askdb.rulemap import build_matcher

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return load_builtin_catalog()


@pytest.fixture(scope="session")
def matcher(catalog):
    return build_matcher(catalog.rules)
