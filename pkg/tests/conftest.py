import pytest

from quadenv.quadspace import SamplingPolicy


@pytest.fixture
def policy():
    return SamplingPolicy()
