import pytest

from app.bitcore.bitstring import BitString, EnsembleParams


@pytest.fixture
def unit1():
    return BitString.unit(EnsembleParams(N=1))


@pytest.fixture(params=[1, 2, 3, 4])
def small_params(request):
    return EnsembleParams(N=request.param)
