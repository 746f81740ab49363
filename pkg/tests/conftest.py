from __future__ import annotations

import pytest

from mrlab.catalog import default_catalog


@pytest.fixture(scope="session")
def cat():
    return default_catalog()
