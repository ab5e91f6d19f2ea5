import pytest

from rotamime.maps import MapSpec


@pytest.fixture
def spec_3_11():
    return MapSpec.from_kn(3, 11, 110.0)


@pytest.fixture
def spec_1_3():
    return MapSpec.from_kn(1, 3, 40.0)
