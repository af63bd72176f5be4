import pytest
from hypothesis import HealthCheck, settings

from adzeta.spectrum import preset

# derandomized so repeated runs draw the same examples
settings.register_profile(
    "adzeta",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("adzeta")


@pytest.fixture(scope="session")
def integer_spec():
    return preset("integer")


@pytest.fixture(scope="session")
def half_spec():
    return preset("half-integer")
