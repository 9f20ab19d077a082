import pytest
from hypothesis import HealthCheck, settings

from carpet_reduction.strip_paths import build_family

settings.register_profile(
    "repo", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def family25():
    return build_family(25)


@pytest.fixture(scope="session")
def family50():
    return build_family(50)
