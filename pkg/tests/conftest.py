""" Shared fixtures: fixed-seed parameter points and small modules. """

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

import pytest

from src.scalars import derive_params, make_param_point, Parity
from src.wordrep import ModuleSpec

# Genericity bound used throughout, 4N+4 for the largest N tested densely
BOUND = 28
SEEDS = (1, 2, 3)


@pytest.fixture(scope="session")
def point():
    return make_param_point(SEEDS[0], BOUND)


@pytest.fixture(scope="session", params=SEEDS, ids=[f"seed{s}" for s in SEEDS])
def seeded_point(request):
    return make_param_point(request.param, BOUND)


@pytest.fixture(scope="session")
def params_for(point):
    """ DerivedParams for a chain length at the default point. """
    def build(n: int):
        return derive_params(point, Parity.of(n))
    return build


@pytest.fixture(scope="session")
def big(params_for):
    """ W^(N)(b) at the default point. """
    def build(n: int) -> ModuleSpec:
        return ModuleSpec.big(n, params_for(n))
    return build
