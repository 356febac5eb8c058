import pytest

from definetti.operators import DEFAULT_MAX_SIDE, set_max_side


@pytest.fixture(autouse=True)
def _reset_side_cap():
    yield
    set_max_side(DEFAULT_MAX_SIDE)
