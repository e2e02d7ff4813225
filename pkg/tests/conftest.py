"""Shared fixtures."""

import numpy as np
import pytest
from helpers import alternating_partition, random_dataset, random_state

from src.model.types import HyperParams, PaceState


@pytest.fixture
def small_problem():
    """d=6, n=10, l=5, k=3, m=2, g=2 with a random pace."""
    ds = random_dataset(6, 10, 5, seed=0)
    part = alternating_partition(10, 2)
    params = HyperParams(k=3, m=2, g=2, alpha=1.0, beta1=0.5, beta2=0.5, tau=1e-3)
    state = random_state(6, 10, 5, 3, 2, 2, seed=1)
    rng = np.random.default_rng(2)
    pace = PaceState(P=rng.random((3, 10)), lam=0.5, gamma=0.3)
    return ds, part, params, state, pace
