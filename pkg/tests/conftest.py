import pytest
from hypothesis import settings

from etqft.cob import frobenius as fr

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


@pytest.fixture(params=fr.BUNDLED)
def algebra_name(request):
    return request.param


@pytest.fixture
def algebra(algebra_name):
    return fr.bundled(algebra_name)
