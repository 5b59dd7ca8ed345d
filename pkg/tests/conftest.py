import pytest
from hypothesis import HealthCheck, settings

from bihom.catalog import emit_sl2_family, emit_sl2_post_lie, emit_tridend_2dim

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def sl2():
    return emit_sl2_family()


@pytest.fixture(scope="session")
def sl2_post():
    return emit_sl2_post_lie()


@pytest.fixture(scope="session")
def tridend():
    return emit_tridend_2dim()
