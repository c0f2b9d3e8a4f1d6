"""
GreenEdge - Shared test fixtures

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers
"""

import pytest

from greenedge.core import Scenario, generate_scenario
from tests.helpers import SMALL_SPEC


@pytest.fixture(scope="session")
def small_scenario() -> Scenario:
    return generate_scenario(SMALL_SPEC)
