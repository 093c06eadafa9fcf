from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("torsemi", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("torsemi")

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA
