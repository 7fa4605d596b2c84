import numpy as np
import pytest

from fluxring.ring import MomentumGrid
from fluxring.states import MomentumState


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def random_momentum_state(n_sites: int, rng) -> MomentumState:
    grid = MomentumGrid.of(n_sites)
    c = rng.normal(size=n_sites) + 1j * rng.normal(size=n_sites)
    return MomentumState(grid, c / np.linalg.norm(c))
