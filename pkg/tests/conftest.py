from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings

from hwcheck.chevalley import build_chevalley
from hwcheck.rootsys import build_root_system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def rs_of(family, rank):
    return build_root_system(family, rank)


@lru_cache(maxsize=None)
def alg_of(family, rank):
    return build_chevalley(rs_of(family, rank))


def W(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture
def d4():
    return rs_of("D", 4)


@pytest.fixture
def g4():
    return alg_of("D", 4)
