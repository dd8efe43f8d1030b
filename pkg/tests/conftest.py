import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dqdsim import DeviceSpec, SolverOptions, default_device


@pytest.fixture(scope="session")
def device() -> DeviceSpec:
    return default_device(barrier_l=7.0)


@pytest.fixture(scope="session")
def options() -> SolverOptions:
    return SolverOptions()
